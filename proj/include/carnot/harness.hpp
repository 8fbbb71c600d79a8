#pragma once

#include <cstdint>
#include <iosfwd>

#include "carnot/io.hpp"
#include "carnot/maps.hpp"
#include "carnot/pansu.hpp"

namespace carnot {

/// Thrown when an experiment's hypotheses fail; carries the failed bullet's
/// name. The CLI maps it to exit code 1.
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HypothesisCheck {
  std::string name;
  bool ok = false;
  double margin = 0.0;  // >= 0 when the hypothesis holds
};

/// One experiment: map, forms, scales, grid and exponent. The grid is a
/// midpoint lattice over [grid_lo, grid_hi]^N.
struct ExperimentConfig {
  ExperimentConfig(CarnotAlgebra src_, CarnotAlgebra dst_)
      : src(std::move(src_)), dst(std::move(dst_)) {}

  CarnotAlgebra src, dst;
  SampledMap map;
  std::string map_name;
  CoefficientForm omega;  // on dst; alpha for the derivative check
  int omega_weight = 0;
  GradedFormD gamma;      // left-invariant on src; beta for the check
  std::vector<double> rho_list;
  VecXd grid_lo, grid_hi;
  int grid_per_dim = 13;
  std::vector<int> grid_levels = {9, 13};  // derivative-check refinements
  double p = 4.0;
  std::uint64_t seed = 0;
  std::string experiment_id = "experiment";
  int kernel_nodes = 0;  // 0 = dimension default
  double pansu_h = 1e-4;
};

struct ReportRow {
  double label = 0.0;  // rho or grid level
  double norm = 0.0;
  double max_error = 0.0;
};

struct ConvergenceReport {
  std::string experiment_id;
  std::vector<HypothesisCheck> hypotheses;
  std::vector<ReportRow> rows;
  double fitted_exponent = 0.0;
  bool pansu_side_identically_zero = false;
  double runtime_ms = 0.0;
};

/// Weight of a homogeneous left-invariant template; throws when mixed.
int form_weight(const CarnotAlgebra& alg, const GradedFormD& f);

/// The hypothesis bullets of the approximation theorem, with margins.
std::vector<HypothesisCheck> check_approximation_hypotheses(
    const ExperimentConfig& cfg);

/// Mollified ordinary pullback vs Pansu pullback in L^s over the grid, one
/// row per rho. Throws HypothesisError when a bullet fails.
ConvergenceReport run_approximation_experiment(const ExperimentConfig& cfg);

/// Distributional commutation of d with the Pansu pullback, paired against
/// fixed bump test functions; one row per grid level.
ConvergenceReport run_exterior_derivative_check(const ExperimentConfig& cfg);

struct RigidityReport {
  std::vector<int> sigma_decomposed;
  std::vector<int> sigma_codegree1;
  std::vector<int> sigma_two_forms;  // empty for free factors
  bool has_two_forms = false;
  bool all_match = false;
  double runtime_ms = 0.0;
};

/// Detects the factor permutation of a product automorphism by pulling the
/// rigidity test forms back through the estimated Pansu differential, and
/// cross-checks against the block decomposition.
RigidityReport run_rigidity_demo(const CarnotAlgebra& prod,
                                 const CarnotAlgebra& factor, const MatXq& phi,
                                 double pansu_h = 1e-4);

/// Deterministic CSV: header 'experiment,label,norm,max_error,runtime_ms';
/// the runtime field is written only when include_runtime is set, so seeded
/// runs are byte-identical.
void emit_csv(const ConvergenceReport& report, std::ostream& os,
              bool include_runtime = false);
void emit_csv_file(const ConvergenceReport& report, const std::string& path,
                   bool include_runtime = false);

/// Smooth tensor bump centered at `center` with half-width `width` per
/// coordinate; value and gradient are analytic.
ScalarField tensor_bump(const VecXd& center, double width);

/// Parses the form/coefficient/map specs used by config files:
///   forms:  vol | one | theta:2 | theta:2^3 | ivol:1   (1-based indices)
GradedFormQ parse_form_template(const CarnotAlgebra& alg,
                                const std::string& spec);
ScalarField parse_coefficient(const std::string& spec);
SampledMap parse_map(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                     const Config& cfg, const std::string& section);

/// Experiment builders from config files (sections documented in --help).
ExperimentConfig approx_config(const Config& cfg);
ExperimentConfig dcheck_config(const Config& cfg);

}  // namespace carnot
