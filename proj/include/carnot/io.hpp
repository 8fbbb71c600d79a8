#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "carnot/algebra.hpp"
#include "carnot/measure.hpp"

namespace carnot {

/// Thrown for file-level problems (missing, unreadable, malformed shape);
/// the CLI maps it to exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Algebra definition file:
///   layers: d_1 ... d_m
///   bracket: i j k num/den        (1-based indices, i < j, one per line)
///   inner_product:                (optional; N rows of N rationals follow)
/// '#' starts a comment. The parsed algebra must pass validate_algebra;
/// violations raise std::invalid_argument naming the axiom.
CarnotAlgebra parse_algebra_text(std::istream& in, const std::string& origin,
                                 bool check_axioms = true);
CarnotAlgebra parse_algebra_file(const std::string& path,
                                 bool check_axioms = true);

/// Builtin name (h1, h2xh2, free2_step3, ...) or a path to an algebra file.
CarnotAlgebra resolve_algebra(const std::string& spec);

/// Measure file: one support point per row, "w x_1 ... x_N"; entries are
/// rationals ("3/4"), integers, or plain decimals ("0.25"), all parsed
/// exactly.
DiscreteMeasureQ parse_measure_text(std::istream& in, int dim,
                                    const std::string& origin);
DiscreteMeasureQ parse_measure_file(const std::string& path, int dim);

/// Decimal/rational literal to an exact rational.
Rat parse_exact_number(const std::string& token);

/// Plain-text key-value configuration with [section] headers and '#'
/// comments. Keys are looked up as "section.key".
class Config {
 public:
  static Config parse_text(std::istream& in, const std::string& origin);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;  // throws if absent
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  int get_int_or(const std::string& key, int fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

std::vector<std::string> split_ws(const std::string& line);
std::vector<std::string> split_list(const std::string& text, char sep = ',');

}  // namespace carnot
