#include "carnot/io.hpp"

#include <fstream>
#include <sstream>

#include "carnot/builtins.hpp"

namespace carnot {

namespace {

std::string strip(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

std::string drop_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      const std::string t = strip(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  const std::string t = strip(cur);
  if (!t.empty()) out.push_back(t);
  return out;
}

Rat parse_exact_number(const std::string& token) {
  const auto dot = token.find('.');
  if (dot == std::string::npos) return Rat::parse(token);
  // Exact decimal: digits after the point become a power-of-ten denominator.
  std::string digits = token.substr(0, dot) + token.substr(dot + 1);
  const std::size_t frac = token.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("cannot parse number '" + token + "'");
  Rat num = Rat::parse(digits);
  Rat den(1);
  for (std::size_t i = 0; i < frac; ++i) den *= Rat(10);
  return num / den;
}

CarnotAlgebra parse_algebra_text(std::istream& in, const std::string& origin,
                                 bool check_axioms) {
  std::vector<int> layers;
  std::vector<BracketTerm> terms;
  std::vector<std::vector<Rat>> inner_rows;
  bool reading_inner = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip(drop_comment(line));
    if (body.empty()) continue;
    const auto fail = [&](const std::string& msg) -> IoError {
      return IoError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    if (body.rfind("layers:", 0) == 0) {
      reading_inner = false;
      for (const std::string& tok : split_ws(body.substr(7))) {
        try {
          layers.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          throw fail("bad layer dimension '" + tok + "'");
        }
      }
      if (layers.empty()) throw fail("layers: needs at least one dimension");
      continue;
    }
    if (body.rfind("bracket:", 0) == 0) {
      reading_inner = false;
      const auto toks = split_ws(body.substr(8));
      if (toks.size() != 4) throw fail("bracket: expects 'i j k num/den'");
      BracketTerm t;
      try {
        t.i = std::stoi(toks[0]) - 1;
        t.j = std::stoi(toks[1]) - 1;
        t.k = std::stoi(toks[2]) - 1;
        t.c = parse_exact_number(toks[3]);
      } catch (const std::invalid_argument& e) {
        throw fail(std::string("bad bracket entry: ") + e.what());
      }
      if (t.i >= t.j) throw fail("bracket: entries require i < j");
      terms.push_back(std::move(t));
      continue;
    }
    if (body.rfind("inner_product:", 0) == 0) {
      reading_inner = true;
      continue;
    }
    if (reading_inner) {
      std::vector<Rat> row;
      for (const std::string& tok : split_ws(body)) {
        try {
          row.push_back(parse_exact_number(tok));
        } catch (const std::invalid_argument&) {
          throw fail("bad inner product entry '" + tok + "'");
        }
      }
      inner_rows.push_back(std::move(row));
      continue;
    }
    throw fail("unrecognized line '" + body + "'");
  }
  if (layers.empty()) throw IoError(origin + ": missing 'layers:' line");

  int n = 0;
  for (int d : layers) n += d;
  MatXq inner;
  if (!inner_rows.empty()) {
    if (static_cast<int>(inner_rows.size()) != n)
      throw IoError(origin + ": inner_product needs " + std::to_string(n) +
                    " rows");
    inner.resize(n, n);
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(inner_rows[r].size()) != n)
        throw IoError(origin + ": inner_product row " + std::to_string(r + 1) +
                      " needs " + std::to_string(n) + " entries");
      for (int c = 0; c < n; ++c) inner(r, c) = inner_rows[r][c];
    }
  }

  CarnotAlgebra alg(layers, std::move(terms), std::move(inner));
  if (check_axioms) {
    const ValidationReport rep = validate_algebra(alg);
    if (!rep.ok) {
      throw std::invalid_argument(origin + ": algebra rejected: " + rep.axiom +
                                  " (" + rep.message + ")");
    }
  }
  return alg;
}

CarnotAlgebra parse_algebra_file(const std::string& path, bool check_axioms) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open algebra file '" + path + "'");
  return parse_algebra_text(in, path, check_axioms);
}

CarnotAlgebra resolve_algebra(const std::string& spec) {
  try {
    return make_builtin(spec);
  } catch (const std::invalid_argument&) {
    return parse_algebra_file(spec);
  }
}

DiscreteMeasureQ parse_measure_text(std::istream& in, int dim,
                                    const std::string& origin) {
  DiscreteMeasureQ nu;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip(drop_comment(line));
    if (body.empty()) continue;
    const auto toks = split_ws(body);
    if (static_cast<int>(toks.size()) != dim + 1)
      throw IoError(origin + ":" + std::to_string(lineno) + ": expected " +
                    std::to_string(dim + 1) + " entries, got " +
                    std::to_string(toks.size()));
    Rat w;
    VecXq p(dim);
    try {
      w = parse_exact_number(toks[0]);
      for (int i = 0; i < dim; ++i) p[i] = parse_exact_number(toks[i + 1]);
    } catch (const std::invalid_argument& e) {
      throw IoError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
    nu.weights.push_back(std::move(w));
    nu.points.push_back(std::move(p));
  }
  if (nu.points.empty()) throw IoError(origin + ": empty measure");
  return nu;
}

DiscreteMeasureQ parse_measure_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open measure file '" + path + "'");
  return parse_measure_text(in, dim, path);
}

Config Config::parse_text(std::istream& in, const std::string& origin) {
  Config cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip(drop_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw IoError(origin + ":" + std::to_string(lineno) +
                      ": malformed section header");
      section = strip(body.substr(1, body.size() - 2));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw IoError(origin + ":" + std::to_string(lineno) +
                    ": expected 'key = value'");
    const std::string key = strip(body.substr(0, eq));
    const std::string value = strip(body.substr(eq + 1));
    if (key.empty())
      throw IoError(origin + ":" + std::to_string(lineno) + ": empty key");
    cfg.kv_[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_text(in, path);
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end())
    throw std::invalid_argument("config: missing key '" + key + "'");
  return it->second;
}

std::string Config::get_or(const std::string& key,
                           const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  return std::stod(get(key));
}

double Config::get_double_or(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : std::stod(it->second);
}

int Config::get_int_or(const std::string& key, int fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : std::stoi(it->second);
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& tok : split_list(get(key)))
    out.push_back(std::stod(tok));
  return out;
}

}  // namespace carnot
