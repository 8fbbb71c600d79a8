#include "carnot/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "carnot/builtins.hpp"

namespace carnot {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::vector<VecXd> midpoint_grid(const VecXd& lo, const VecXd& hi, int n) {
  const int dim = static_cast<int>(lo.size());
  std::vector<VecXd> out;
  std::vector<int> idx(dim, 0);
  for (;;) {
    VecXd x(dim);
    for (int i = 0; i < dim; ++i)
      x[i] = lo[i] + (hi[i] - lo[i]) * (2.0 * idx[i] + 1.0) / (2.0 * n);
    out.push_back(std::move(x));
    int pos = 0;
    while (pos < dim && ++idx[pos] == n) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == dim) break;
  }
  return out;
}

double grid_cell_volume(const VecXd& lo, const VecXd& hi, int n) {
  double v = 1.0;
  for (Eigen::Index i = 0; i < lo.size(); ++i) v *= (hi[i] - lo[i]) / n;
  return v;
}

/// Coordinate-frame coefficients of a form given in the left-invariant frame
/// at x: pull through the inverse frame matrix.
GradedFormD to_coordinate_frame(const CarnotAlgebra& alg, const VecXd& x,
                                const GradedFormD& frame_form) {
  const MatXd frame_inv = left_frame<double>(alg, x).inverse();
  return pullback_linear<double>(alg, alg, frame_inv, frame_form);
}

}  // namespace

int form_weight(const CarnotAlgebra& alg, const GradedFormD& f) {
  const auto split = weight_split<double>(alg, f);
  if (split.empty()) return 0;
  if (split.size() != 1)
    throw std::invalid_argument("form_weight: template is not homogeneous");
  return split[0].first;
}

std::vector<HypothesisCheck> check_approximation_hypotheses(
    const ExperimentConfig& cfg) {
  std::vector<HypothesisCheck> out;
  const double nu = static_cast<double>(cfg.src.homogeneous_dim());
  const double w_omega = cfg.omega_weight;
  const double w_gamma =
      cfg.gamma.degree == 0 ? 0.0 : form_weight(cfg.src, cfg.gamma);

  out.push_back({"eta_left_invariant", true, 0.0});
  out.push_back({"omega_continuous_bounded", true, 0.0});
  out.push_back({"degree: deg(omega)+deg(gamma) = dim G",
                 cfg.omega.degree + cfg.gamma.degree == cfg.src.dim(), 0.0});
  out.push_back({"weight: wt(omega)+wt(gamma) <= -nu",
                 w_omega + w_gamma <= -nu, -nu - (w_omega + w_gamma)});
  out.push_back({"exponent defined: wt(omega) < 0", w_omega < 0.0, -w_omega});
  out.push_back(
      {"exponent: p >= -wt(omega)", cfg.p >= -w_omega, cfg.p + w_omega});
  const double sobolev =
      1.0 / cfg.dst.step() + 1.0 / nu - 1.0 / cfg.p;
  out.push_back({"sobolev: 1/p <= 1/step + 1/nu", sobolev >= 0.0, sobolev});
  return out;
}

ConvergenceReport run_approximation_experiment(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  ConvergenceReport rep;
  rep.experiment_id = cfg.experiment_id;
  rep.hypotheses = check_approximation_hypotheses(cfg);
  for (const HypothesisCheck& h : rep.hypotheses) {
    if (!h.ok)
      throw HypothesisError("approximation hypothesis failed: " + h.name);
  }

  const double s = cfg.p / (-static_cast<double>(cfg.omega_weight));
  const std::vector<VecXd> grid =
      midpoint_grid(cfg.grid_lo, cfg.grid_hi, cfg.grid_per_dim);
  const double cellvol =
      grid_cell_volume(cfg.grid_lo, cfg.grid_hi, cfg.grid_per_dim);
  const MollKernel kernel = MollKernel::midpoint(cfg.src, cfg.kernel_nodes);

  // Pansu side, once per grid point.
  std::vector<double> pansu_vals;
  pansu_vals.reserve(grid.size());
  bool pansu_zero = true;
  for (const VecXd& x : grid) {
    const auto dp =
        pansu_differential_analytic(cfg.src, cfg.dst, cfg.map, x, cfg.pansu_h);
    if (!dp)
      throw HypothesisError(
          "pansu differential extension failed at a grid point");
    const GradedFormD pulled =
        pansu_pullback(cfg.src, cfg.dst, *dp, cfg.omega, cfg.map(cfg.src, x));
    const GradedFormD top = wedge<double>(cfg.src, pulled, cfg.gamma);
    const double value = top.coeff.size() > 0 ? top.coeff[0] : 0.0;
    pansu_vals.push_back(value);
    if (value != 0.0) pansu_zero = false;
  }
  rep.pansu_side_identically_zero = pansu_zero;

  for (const double rho : cfg.rho_list) {
    const double h = rho / 20.0;
    double acc = 0.0;
    double worst = 0.0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      const VecXd& x = grid[gi];
      const VecXd frho_x =
          mollify_at<double>(cfg.src, cfg.dst, cfg.map, kernel, x, rho);
      MatXd jac(cfg.dst.dim(), cfg.src.dim());
      for (int j = 0; j < cfg.src.dim(); ++j) {
        VecXd dx = VecXd::Zero(cfg.src.dim());
        dx[j] = h;
        jac.col(j) = (mollify_at<double>(cfg.src, cfg.dst, cfg.map, kernel,
                                         VecXd(x + dx), rho) -
                      mollify_at<double>(cfg.src, cfg.dst, cfg.map, kernel,
                                         VecXd(x - dx), rho)) /
                     (2 * h);
      }
      // Left-trivialized differential of f_rho at x.
      const MatXd l = left_frame<double>(cfg.dst, frho_x).inverse() * jac *
                      left_frame<double>(cfg.src, x);
      const GradedFormD omega_at = cfg.omega.eval(cfg.dst, frho_x);
      const GradedFormD pulled =
          pullback_linear<double>(cfg.src, cfg.dst, l, omega_at);
      const GradedFormD top = wedge<double>(cfg.src, pulled, cfg.gamma);
      const double ordinary = top.coeff.size() > 0 ? top.coeff[0] : 0.0;
      const double diff = std::abs(ordinary - pansu_vals[gi]);
      worst = std::max(worst, diff);
      acc += cellvol * std::pow(diff, s);
    }
    rep.rows.push_back({rho, std::pow(acc, 1.0 / s), worst});
  }

  {
    std::vector<double> scales, values;
    for (const ReportRow& r : rep.rows) {
      scales.push_back(r.label);
      values.push_back(r.norm);
    }
    rep.fitted_exponent = fitted_decay_exponent(scales, values);
  }
  rep.runtime_ms = ms_since(start);
  return rep;
}

ConvergenceReport run_exterior_derivative_check(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  ConvergenceReport rep;
  rep.experiment_id = cfg.experiment_id;

  const int n = cfg.src.dim();
  const double nu = static_cast<double>(cfg.src.homogeneous_dim());
  const int w_alpha = cfg.omega_weight;
  const int w_beta = cfg.gamma.degree == 0 ? 0 : form_weight(cfg.src, cfg.gamma);
  rep.hypotheses.push_back(
      {"degree: deg(alpha)+deg(beta) = dim G - 1",
       cfg.omega.degree + cfg.gamma.degree == cfg.src.dim() - 1, 0.0});
  rep.hypotheses.push_back({"weight: wt(alpha)+wt(beta) = -nu+1",
                            w_alpha + w_beta == -nu + 1,
                            std::abs(w_alpha + w_beta + nu - 1)});
  rep.hypotheses.push_back(
      {"beta_closed",
       ce_differential<double>(cfg.src, cfg.gamma).is_zero(), 0.0});

  const CoefficientForm dalpha = d_coefficient_form(cfg.dst, cfg.omega);
  int min_w = 0;
  for (const auto& term : dalpha.terms)
    min_w = std::min(min_w, form_weight(cfg.dst, term.form));
  rep.hypotheses.push_back(
      {"exponent: p >= -wt(alpha)", cfg.p >= -w_alpha, cfg.p + w_alpha});
  rep.hypotheses.push_back(
      {"exponent: p >= -min wt(d alpha)", cfg.p >= -min_w, cfg.p + min_w});
  const double sobolev = 1.0 / cfg.dst.step() + 1.0 / nu - 1.0 / cfg.p;
  rep.hypotheses.push_back(
      {"sobolev: 1/p <= 1/step + 1/nu", sobolev >= 0.0, sobolev});
  for (const HypothesisCheck& h : rep.hypotheses) {
    if (!h.ok)
      throw HypothesisError("derivative-check hypothesis failed: " + h.name);
  }

  // Three fixed bump test functions inside the grid box.
  const VecXd mid = (cfg.grid_lo + cfg.grid_hi) / 2.0;
  const double span = (cfg.grid_hi - cfg.grid_lo).minCoeff();
  std::vector<ScalarField> tests;
  tests.push_back(tensor_bump(mid, 0.35 * span));
  tests.push_back(
      tensor_bump(VecXd(mid + VecXd::Constant(n, 0.08 * span)), 0.3 * span));
  tests.push_back(
      tensor_bump(VecXd(mid - VecXd::Constant(n, 0.1 * span)), 0.25 * span));

  const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^N

  for (const int level : cfg.grid_levels) {
    const std::vector<VecXd> grid =
        midpoint_grid(cfg.grid_lo, cfg.grid_hi, level);
    const double cellvol = grid_cell_volume(cfg.grid_lo, cfg.grid_hi, level);
    std::vector<double> lhs(tests.size(), 0.0), rhs(tests.size(), 0.0);

    for (const VecXd& x : grid) {
      const auto dp = pansu_differential_analytic(cfg.src, cfg.dst, cfg.map, x,
                                                  cfg.pansu_h);
      if (!dp)
        throw HypothesisError(
            "pansu differential extension failed at a grid point");
      const VecXd fx = cfg.map(cfg.src, x);

      // f_P* alpha ^ beta, moved to the coordinate frame for the dphi wedge.
      const GradedFormD pulled_alpha =
          pansu_pullback(cfg.src, cfg.dst, *dp, cfg.omega, fx);
      const GradedFormD w_frame =
          wedge<double>(cfg.src, pulled_alpha, cfg.gamma);
      const GradedFormD w_coord = to_coordinate_frame(cfg.src, x, w_frame);

      // f_P*(d alpha) ^ beta: a top form, frame-independent coefficient.
      const GradedFormD pulled_d =
          pansu_pullback(cfg.src, cfg.dst, *dp, dalpha, fx);
      const GradedFormD top = wedge<double>(cfg.src, pulled_d, cfg.gamma);
      const double rhs_coeff = top.coeff.size() > 0 ? top.coeff[0] : 0.0;

      for (std::size_t t = 0; t < tests.size(); ++t) {
        // d phi on the lattice: central differences with the grid spacing.
        GradedFormD dphi = zero_form<double>(cfg.src, 1);
        for (int j = 0; j < n; ++j) {
          const double hj = (cfg.grid_hi[j] - cfg.grid_lo[j]) / level;
          VecXd dx = VecXd::Zero(n);
          dx[j] = hj;
          dphi.coeff[j] = (tests[t].value(x + dx) - tests[t].value(x - dx)) /
                          (2 * hj);
        }
        const GradedFormD integrand = wedge<double>(cfg.src, w_coord, dphi);
        lhs[t] += cellvol * (integrand.coeff.size() > 0 ? integrand.coeff[0]
                                                        : 0.0);
        rhs[t] += cellvol * tests[t].value(x) * rhs_coeff;
      }
    }

    double worst = 0.0;
    for (std::size_t t = 0; t < tests.size(); ++t)
      worst = std::max(worst, std::abs(sign * lhs[t] - rhs[t]));
    rep.rows.push_back({static_cast<double>(level), worst, worst});
  }

  {
    std::vector<double> scales, values;
    for (const ReportRow& r : rep.rows) {
      scales.push_back(1.0 / r.label);
      values.push_back(r.norm);
    }
    rep.fitted_exponent = fitted_decay_exponent(scales, values);
  }
  rep.runtime_ms = ms_since(start);
  return rep;
}

RigidityReport run_rigidity_demo(const CarnotAlgebra& prod,
                                 const CarnotAlgebra& factor, const MatXq& phi,
                                 double pansu_h) {
  const auto start = Clock::now();
  RigidityReport rep;
  const auto dec = decompose_product_automorphism(prod, {phi});
  if (!dec.ok)
    throw std::invalid_argument("run_rigidity_demo: degenerate map: " +
                                dec.error);
  rep.sigma_decomposed = dec.sigma;

  const int nf = static_cast<int>(prod.factors().size());
  const SampledMap f = hom_map(to_double(phi));

  // Two deterministic sample points; the differential of a group
  // automorphism is constant, sampling twice guards the estimator.
  std::vector<VecXd> samples;
  samples.push_back(VecXd::Zero(prod.dim()));
  samples.push_back(VecXd::Constant(prod.dim(), 0.3));
  std::vector<PansuDifferential> dps;
  for (const VecXd& x : samples) {
    const auto dp = pansu_differential_analytic(prod, prod, f, x, pansu_h);
    if (!dp)
      throw std::invalid_argument(
          "run_rigidity_demo: pansu estimation failed");
    dps.push_back(*dp);
  }

  const RigidityForms forms = rigidity_test_forms(factor);
  rep.has_two_forms = forms.has_two_forms;

  // Volume lifts of all factors, reused in the mass extraction wedges.
  std::vector<GradedFormD> vol_lift;
  for (int i = 0; i < nf; ++i)
    vol_lift.push_back(to_double(
        lift_factor_form<Rat>(prod, i, vol_form<Rat>(factor))));

  const auto detect = [&](const GradedFormQ& alpha_factor,
                          const std::vector<GradedFormQ>& duals_factor,
                          int i) {
    const GradedFormD alpha =
        to_double(lift_factor_form<Rat>(prod, i, alpha_factor));
    std::vector<double> mass(static_cast<std::size_t>(nf), 0.0);
    for (const PansuDifferential& dp : dps) {
      const GradedFormD pulled = pullback_linear<double>(
          prod, prod, dp.map.m, alpha);
      for (int j = 0; j < nf; ++j) {
        for (const GradedFormQ& dual : duals_factor) {
          GradedFormD probe =
              wedge<double>(prod, pulled,
                            to_double(lift_factor_form<Rat>(prod, j, dual)));
          for (int o = 0; o < nf; ++o) {
            if (o == j) continue;
            probe = wedge<double>(prod, probe, vol_lift[o]);
          }
          if (probe.degree == prod.dim() && probe.coeff.size() > 0)
            mass[static_cast<std::size_t>(j)] += std::abs(probe.coeff[0]);
        }
      }
    }
    int best = 0;
    for (int j = 1; j < nf; ++j)
      if (mass[static_cast<std::size_t>(j)] >
          mass[static_cast<std::size_t>(best)])
        best = j;
    return best;
  };

  // Theorem-style detection: alpha_i = i_Y vol, duals are the horizontal
  // covectors.
  std::vector<GradedFormQ> covector_duals;
  for (int a = 0; a < factor.layer_dim(1); ++a)
    covector_duals.push_back(basis_covector<Rat>(factor, {a}));
  for (int i = 0; i < nf; ++i)
    rep.sigma_codegree1.push_back(
        detect(forms.codegree1[0], covector_duals, i));

  if (forms.has_two_forms) {
    for (int i = 0; i < nf; ++i)
      rep.sigma_two_forms.push_back(
          detect(forms.two_forms[0], forms.two_form_duals, i));
  }

  rep.all_match = rep.sigma_codegree1 == rep.sigma_decomposed &&
                  (!rep.has_two_forms ||
                   rep.sigma_two_forms == rep.sigma_decomposed);
  rep.runtime_ms = ms_since(start);
  return rep;
}

void emit_csv(const ConvergenceReport& report, std::ostream& os,
              bool include_runtime) {
  os << "experiment,label,norm,max_error,runtime_ms\n";
  char buf[256];
  for (const ReportRow& row : report.rows) {
    if (include_runtime) {
      std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%.12g,%.3f\n",
                    report.experiment_id.c_str(), row.label, row.norm,
                    row.max_error, report.runtime_ms);
    } else {
      std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%.12g,\n",
                    report.experiment_id.c_str(), row.label, row.norm,
                    row.max_error);
    }
    os << buf;
  }
}

void emit_csv_file(const ConvergenceReport& report, const std::string& path,
                   bool include_runtime) {
  std::ofstream os(path, std::ios::binary);  // LF line endings everywhere
  if (!os) throw IoError("cannot open output file '" + path + "'");
  emit_csv(report, os, include_runtime);
  if (!os) throw IoError("failed writing '" + path + "'");
}

ScalarField tensor_bump(const VecXd& center, double width) {
  ScalarField f;
  f.value = [center, width](const VecXd& y) {
    double prod = 1.0;
    for (Eigen::Index i = 0; i < center.size(); ++i) {
      const double t = (y[i] - center[i]) / width;
      if (std::abs(t) >= 1.0) return 0.0;
      prod *= std::exp(1.0 / (t * t - 1.0));
    }
    return prod;
  };
  f.gradient = [center, width](const VecXd& y) {
    VecXd g = VecXd::Zero(center.size());
    double prod = 1.0;
    for (Eigen::Index i = 0; i < center.size(); ++i) {
      const double t = (y[i] - center[i]) / width;
      if (std::abs(t) >= 1.0) return VecXd(VecXd::Zero(center.size()));
      prod *= std::exp(1.0 / (t * t - 1.0));
    }
    for (Eigen::Index i = 0; i < center.size(); ++i) {
      const double t = (y[i] - center[i]) / width;
      const double d = t * t - 1.0;
      g[i] = prod * (-2.0 * t / (d * d)) / width;
    }
    return g;
  };
  return f;
}

GradedFormQ parse_form_template(const CarnotAlgebra& alg,
                                const std::string& spec) {
  if (spec == "vol") return vol_form<Rat>(alg);
  if (spec == "one" || spec == "1") {
    GradedFormQ f = zero_form<Rat>(alg, 0);
    f.coeff[0] = Rat(1);
    return f;
  }
  if (spec.rfind("theta:", 0) == 0) {
    std::vector<int> idx;
    for (const std::string& tok : split_list(spec.substr(6), '^'))
      idx.push_back(std::stoi(tok) - 1);
    return basis_covector<Rat>(alg, idx);
  }
  if (spec.rfind("ivol:", 0) == 0) {
    const int a = std::stoi(spec.substr(5)) - 1;
    VecXq y = VecXq::Zero(alg.dim());
    y[a] = Rat(1);
    return interior_product<Rat>(alg, y, vol_form<Rat>(alg));
  }
  throw std::invalid_argument("unknown form template '" + spec + "'");
}

ScalarField parse_coefficient(const std::string& spec) {
  const auto toks = split_list(spec, ' ');
  if (toks.empty())
    throw std::invalid_argument("empty coefficient spec");
  if (toks[0] == "const") {
    return ScalarField::constant(toks.size() > 1 ? std::stod(toks[1]) : 1.0);
  }
  if (toks[0] == "bump") {
    // bump <c1,c2,...> <width>
    if (toks.size() != 3)
      throw std::invalid_argument("bump coefficient: 'bump c1,c2,.. width'");
    const auto cs = split_list(toks[1]);
    VecXd center(static_cast<Eigen::Index>(cs.size()));
    for (std::size_t i = 0; i < cs.size(); ++i)
      center[static_cast<Eigen::Index>(i)] = std::stod(cs[i]);
    return tensor_bump(center, std::stod(toks[2]));
  }
  throw std::invalid_argument("unknown coefficient spec '" + spec + "'");
}

SampledMap parse_map(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                     const Config& cfg, const std::string& section) {
  const std::string name = cfg.get(section + ".name");
  if (name == "identity") return identity_map(src.dim());
  if (name == "dilation")
    return dilation_map(src, cfg.get_double(section + ".r"));
  if (name == "translation") {
    const auto cs = split_list(cfg.get(section + ".a"));
    VecXd a(static_cast<Eigen::Index>(cs.size()));
    for (std::size_t i = 0; i < cs.size(); ++i)
      a[static_cast<Eigen::Index>(i)] = std::stod(cs[i]);
    return left_translation_map(src, a);
  }
  if (name == "contact_shear")
    return contact_shear_h1(cfg.get_double_or(section + ".lambda", 0.8));
  if (name == "v2_quadratic") {
    MatXd a = MatXd::Identity(dst.dim(), src.dim());
    if (cfg.has(section + ".matrix")) {
      const auto rows = split_list(cfg.get(section + ".matrix"), ';');
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto entries = split_ws(rows[r]);
        for (std::size_t c = 0; c < entries.size(); ++c)
          a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              parse_exact_number(entries[c]).to_double();
      }
    }
    return v2_quadratic_h1(a, cfg.get_double_or(section + ".eps", 0.1));
  }
  if (name == "hom") {
    const auto rows = split_list(cfg.get(section + ".matrix"), ';');
    MatXd a = MatXd::Zero(dst.dim(), src.dim());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto entries = split_ws(rows[r]);
      for (std::size_t c = 0; c < entries.size(); ++c)
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            parse_exact_number(entries[c]).to_double();
    }
    return hom_map(a);
  }
  if (name == "gridmap")
    return grid_map_from_file(cfg.get(section + ".file"), src.dim());
  throw std::invalid_argument("unknown map '" + name + "'");
}

namespace {

ExperimentConfig shared_config(const Config& cfg, const char* omega_section,
                               const char* gamma_section) {
  ExperimentConfig out(
      resolve_algebra(cfg.get_or("domain.algebra", "h1")),
      resolve_algebra(
          cfg.get_or("target.algebra", cfg.get_or("domain.algebra", "h1"))));
  out.map = parse_map(out.src, out.dst, cfg, "map");
  out.map_name = cfg.get("map.name");

  const GradedFormQ omega_template = parse_form_template(
      out.dst, cfg.get_or(std::string(omega_section) + ".template", "vol"));
  const std::string coeff_spec =
      cfg.get_or(std::string(omega_section) + ".coefficient", "const 1");
  out.omega =
      CoefficientForm::scaled(parse_coefficient(coeff_spec),
                              to_double(omega_template));
  out.omega_weight = form_weight(out.dst, to_double(omega_template));

  out.gamma = to_double(parse_form_template(
      out.src, cfg.get_or(std::string(gamma_section) + ".template", "one")));

  const int n = out.src.dim();
  out.grid_lo = VecXd::Constant(n, cfg.get_double_or("experiment.grid_lo", -0.5));
  out.grid_hi = VecXd::Constant(n, cfg.get_double_or("experiment.grid_hi", 0.5));
  out.grid_per_dim = cfg.get_int_or("experiment.grid_n", 13);
  out.p = cfg.get_double_or("experiment.p", 4.0);
  out.kernel_nodes = cfg.get_int_or("experiment.kernel_nodes", 0);
  out.pansu_h = cfg.get_double_or("experiment.pansu_h", 1e-4);
  out.experiment_id = cfg.get_or("experiment.id", "experiment");
  return out;
}

}  // namespace

ExperimentConfig approx_config(const Config& cfg) {
  ExperimentConfig out = shared_config(cfg, "omega", "gamma");
  out.rho_list = cfg.has("experiment.rho")
                     ? cfg.get_double_list("experiment.rho")
                     : std::vector<double>{0.4, 0.2, 0.1, 0.05};
  return out;
}

ExperimentConfig dcheck_config(const Config& cfg) {
  ExperimentConfig out = shared_config(cfg, "alpha", "beta");
  out.grid_levels.clear();
  if (cfg.has("experiment.levels")) {
    for (double v : cfg.get_double_list("experiment.levels"))
      out.grid_levels.push_back(static_cast<int>(v));
  } else {
    out.grid_levels = {9, 13};
  }
  return out;
}

}  // namespace carnot
