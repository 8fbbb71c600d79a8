// Acceptance suite: one test case per criterion, each printing a PASS line
// with its runtime. Tolerances are pinned in code, not configurable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "carnot/builtins.hpp"
#include "carnot/generators.hpp"
#include "carnot/harness.hpp"
#include "oracle_unipotent.hpp"
#include "test_util.hpp"

using namespace carnot;
using carnot::testing::make_rng;
using carnot::testing::random_vec_d;

namespace {

using Clock = std::chrono::steady_clock;

struct Stopwatch {
  Clock::time_point start = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

void pass_line(int criterion, const char* what, double seconds) {
  std::printf("[PASS] criterion %2d: %s (%.2f s)\n", criterion, what, seconds);
  std::fflush(stdout);
}

DiscreteMeasureQ random_measure_q(const CarnotAlgebra& alg, int points,
                                  std::mt19937_64& rng) {
  DiscreteMeasureQ nu;
  for (int i = 0; i < points; ++i) {
    nu.points.push_back(random_vec_q(alg.dim(), rng));
    nu.weights.push_back(abs(random_rat(rng, 5, 4, /*nonzero=*/true)));
  }
  normalize_measure(nu);
  return nu;
}

DiscreteMeasureD to_double_measure(const DiscreteMeasureQ& nu) {
  DiscreteMeasureD out;
  for (const auto& p : nu.points) out.points.push_back(to_double(p));
  for (const auto& w : nu.weights) out.weights.push_back(w.to_double());
  return out;
}

VecXd newton_com(const CarnotAlgebra& alg, const DiscreteMeasureD& nu,
                 const VecXd& start) {
  const int n = alg.dim();
  VecXd x = start;
  const double h = 1e-6;
  for (int iter = 0; iter < 200; ++iter) {
    const VecXd g = c_map<double>(alg, nu, x);
    if (g.cwiseAbs().maxCoeff() < 1e-13) return x;
    MatXd jac(n, n);
    for (int j = 0; j < n; ++j) {
      VecXd dx = VecXd::Zero(n);
      dx[j] = h;
      jac.col(j) = (c_map<double>(alg, nu, VecXd(x + dx)) -
                    c_map<double>(alg, nu, VecXd(x - dx))) /
                   (2 * h);
    }
    const VecXd step = jac.fullPivLu().solve(-g);
    double lambda = 1.0;
    const double g0 = g.norm();
    bool moved = false;
    while (lambda > 1e-6) {
      const VecXd trial = x + lambda * step;
      if (c_map<double>(alg, nu, trial).norm() < g0) {
        x = trial;
        moved = true;
        break;
      }
      lambda /= 2;
    }
    if (!moved) x += step;
  }
  return x;
}

using LD = long double;

SampledMapT<LD> hom_map_ld(const MatXq& phi) {
  SampledMapT<LD> f;
  f.domain = Domain::all();
  f.eval = [m = cast_mat<LD>(phi)](const VecX<LD>& x) {
    return VecX<LD>(m * x);
  };
  return f;
}

SampledMapT<LD> contact_shear_ld(LD lambda) {
  SampledMapT<LD> f;
  f.domain = Domain::all();
  f.eval = [lambda](const VecX<LD>& x) {
    VecX<LD> y(3);
    y[0] = x[0];
    y[1] = x[1] + lambda * x[0] * x[0];
    y[2] = x[2] + lambda * x[0] * x[0] * x[0] / LD(6);
    return y;
  };
  return f;
}

std::vector<VecX<LD>> ld_grid3(double lo, double hi, int n) {
  std::vector<VecX<LD>> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        VecX<LD> x(3);
        x[0] = lo + (hi - lo) * (2 * a + 1) / (2.0 * n);
        x[1] = lo + (hi - lo) * (2 * b + 1) / (2.0 * n);
        x[2] = lo + (hi - lo) * (2 * c + 1) / (2.0 * n);
        out.push_back(x);
      }
  return out;
}

ExperimentConfig criterion7_config() {
  std::istringstream text(R"(
[domain]
algebra = h1
[map]
name = contact_shear
lambda = 0.8
[omega]
template = vol
coefficient = bump 0,0,0 1.2
[gamma]
template = one
[experiment]
id = approx-h1-contact
rho = 0.4, 0.2, 0.1, 0.05
p = 4
grid_lo = -0.5
grid_hi = 0.5
grid_n = 13
)");
  return approx_config(Config::parse_text(text, "criterion7"));
}

}  // namespace

TEST_CASE("criterion 1: exact algebra suite") {
  Stopwatch sw;
  auto rng = make_rng(101);
  const std::vector<std::string> names = {"h1", "h2", "h1xh1", "free2_step3",
                                          "h1c"};
  for (const std::string& name : names) {
    const CarnotAlgebra alg = make_builtin(name);
    const ValidationReport rep = validate_algebra(alg);
    INFO(name);
    REQUIRE(rep.ok);  // antisymmetry, grading, Jacobi, generation: exact

    // Vector-level Jacobi and antisymmetry over random rationals.
    for (int trial = 0; trial < 20; ++trial) {
      const VecXq x = random_vec_q(alg.dim(), rng);
      const VecXq y = random_vec_q(alg.dim(), rng);
      const VecXq z = random_vec_q(alg.dim(), rng);
      REQUIRE(vec_is_zero(
          VecXq(bracket<Rat>(alg, x, y) + bracket<Rat>(alg, y, x))));
      const VecXq jac = bracket<Rat>(alg, x, bracket<Rat>(alg, y, z)) +
                        bracket<Rat>(alg, y, bracket<Rat>(alg, z, x)) +
                        bracket<Rat>(alg, z, bracket<Rat>(alg, x, y));
      REQUIRE(vec_is_zero(jac));
    }
  }
  REQUIRE(sw.seconds() < 10.0);
  pass_line(1, "exact algebra suite (Jacobi/antisymmetry/grading, 5 algebras)",
            sw.seconds());
}

TEST_CASE("criterion 2: BCH oracle equivalence and associativity") {
  Stopwatch sw;
  auto rng = make_rng(102);
  struct Case {
    const char* name;
    carnot::testing::UnipotentRep rep;
  };
  std::vector<Case> cases;
  cases.push_back({"h1", carnot::testing::heisenberg_rep(1)});
  cases.push_back({"h2", carnot::testing::heisenberg_rep(2)});
  cases.push_back({"free2_step3", carnot::testing::tensor_rep_free2(3)});

  for (const Case& c : cases) {
    const CarnotAlgebra alg = make_builtin(c.name);
    for (int trial = 0; trial < 1000; ++trial) {
      const VecXq a = random_vec_q(alg.dim(), rng, 4, 3);
      const VecXq b = random_vec_q(alg.dim(), rng, 4, 3);
      REQUIRE(group_mul<Rat>(alg, a, b) == carnot::testing::oracle_mul(c.rep, a, b));
    }
    for (int trial = 0; trial < 1000; ++trial) {
      const VecXq a = random_vec_q(alg.dim(), rng, 4, 3);
      const VecXq b = random_vec_q(alg.dim(), rng, 4, 3);
      const VecXq z = random_vec_q(alg.dim(), rng, 4, 3);
      REQUIRE(group_mul<Rat>(alg, group_mul<Rat>(alg, a, b), z) ==
              group_mul<Rat>(alg, a, group_mul<Rat>(alg, b, z)));
    }
  }
  pass_line(2, "group law = unipotent matrix oracle, exact, 1000+1000 cases x3",
            sw.seconds());
}

TEST_CASE("criterion 3: center of mass") {
  Stopwatch sw;
  auto rng = make_rng(103);

  // (a) step-2 closed form, 200 random measures.
  const std::vector<std::string> step2 = {"h1", "h2", "free_step2_q3"};
  for (int trial = 0; trial < 200; ++trial) {
    const CarnotAlgebra alg = make_builtin(step2[trial % step2.size()]);
    const DiscreteMeasureQ nu = random_measure_q(alg, 3 + trial % 3, rng);
    VecXq mean = VecXq::Zero(alg.dim());
    for (std::size_t k = 0; k < nu.size(); ++k)
      mean += nu.points[k] * nu.weights[k];
    REQUIRE(com<Rat>(alg, nu) == mean);
  }

  // (b) exact residual on step-3/step-4, 100 measures.
  for (int trial = 0; trial < 100; ++trial) {
    const CarnotAlgebra alg =
        make_builtin(trial % 2 ? "free2_step4" : "free2_step3");
    const DiscreteMeasureQ nu = random_measure_q(alg, 3 + trial % 3, rng);
    REQUIRE(vec_is_zero(c_map<Rat>(alg, nu, com<Rat>(alg, nu))));
  }

  // (c) Newton oracle agreement on 50 step-3 measures, 10 starts each.
  const CarnotAlgebra f3 = free_nilpotent2(3);
  for (int trial = 0; trial < 50; ++trial) {
    const DiscreteMeasureD nu = to_double_measure(random_measure_q(f3, 3, rng));
    const VecXd exact = com<double>(f3, nu);
    for (int start = 0; start < 10; ++start) {
      const VecXd root = newton_com(f3, nu, random_vec_d(5, rng, 2.0));
      REQUIRE((root - exact).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }

  // (d) equivariance triple, 100 randomized cases each, exact.
  const CarnotAlgebra h1 = heisenberg(1);
  const CarnotAlgebra h2 = heisenberg(2);
  for (int trial = 0; trial < 100; ++trial) {
    const DiscreteMeasureQ nu = random_measure_q(h1, 3, rng);
    const VecXq center = com<Rat>(h1, nu);
    const VecXq z = random_vec_q(3, rng);
    const auto translated = map_points<Rat>(
        nu, [&](const VecXq& p) { return group_mul<Rat>(h1, z, p); });
    REQUIRE(com<Rat>(h1, translated) == group_mul<Rat>(h1, z, center));

    const auto inverted =
        map_points<Rat>(nu, [&](const VecXq& p) { return VecXq(-p); });
    REQUIRE(com<Rat>(h1, inverted) == VecXq(-center));

    const GradedHomQ phi{random_heisenberg_hom(1, 2, rng)};
    const auto pushed = map_points<Rat>(
        nu, [&](const VecXq& p) { return VecXq(phi.m * p); });
    REQUIRE(com<Rat>(h2, pushed) == VecXq(phi.m * center));
  }
  pass_line(3, "center of mass: closed form, exact residual, Newton oracle, "
               "equivariance", sw.seconds());
}

TEST_CASE("criterion 4: mollifier fixed points and equivariance") {
  Stopwatch sw;
  auto rng = make_rng(104);
  const CarnotAlgebra h1 = heisenberg(1);
  const CarnotAlgebra h2 = heisenberg(2);
  const MollKernel kernel = MollKernel::midpoint(h1);
  const auto grid = ld_grid3(-0.5, 0.5, 5);
  const LD rho = 0.25L;

  // Homomorphism fixed point over a 5^3 grid, 20 random homs per target.
  for (int trial = 0; trial < 20; ++trial) {
    const MatXq phi_auto = random_heisenberg_auto(1, rng);
    const SampledMapT<LD> f11 = hom_map_ld(phi_auto);
    const MatX<LD> m11 = cast_mat<LD>(phi_auto);
    const MatXq phi_12 = random_heisenberg_hom(1, 2, rng);
    const SampledMapT<LD> f12 = hom_map_ld(phi_12);
    const MatX<LD> m12 = cast_mat<LD>(phi_12);
    for (const VecX<LD>& x : grid) {
      const VecX<LD> out11 = mollify_at<LD>(h1, h1, f11, kernel, x, rho);
      REQUIRE(static_cast<double>(
                  quasi_distance_f<LD>(h1, out11, VecX<LD>(m11 * x))) <= 1e-8);
      const VecX<LD> out12 = mollify_at<LD>(h1, h2, f12, kernel, x, rho);
      REQUIRE(static_cast<double>(
                  quasi_distance_f<LD>(h2, out12, VecX<LD>(m12 * x))) <= 1e-8);
    }
  }

  // Translation and dilation equivariance identities on a non-homomorphism.
  const SampledMapT<LD> f = contact_shear_ld(0.8L);
  std::uniform_real_distribution<double> uni(-0.4, 0.4);
  for (int trial = 0; trial < 20; ++trial) {
    VecX<LD> x(3), a(3), b(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = uni(rng);
      a[i] = uni(rng);
      b[i] = uni(rng);
    }
    // (l_b o f o l_a)_1 = l_b o f_1 o l_a.
    SampledMapT<LD> conj;
    conj.domain = Domain::all();
    conj.eval = [&](const VecX<LD>& y) {
      return group_mul<LD>(h1, b, f.eval(group_mul<LD>(h1, a, y)));
    };
    const VecX<LD> lhs1 = mollify1<LD>(h1, h1, conj, kernel, x);
    const VecX<LD> rhs1 = group_mul<LD>(
        h1, b, mollify1<LD>(h1, h1, f, kernel, group_mul<LD>(h1, a, x)));
    REQUIRE(static_cast<double>(quasi_distance_f<LD>(h1, lhs1, rhs1)) <= 1e-8);

    // delta_{1/rho} o f_rho o delta_rho = (delta_{1/rho} o f o delta_rho)_1.
    SampledMapT<LD> hmap;
    hmap.domain = Domain::all();
    hmap.eval = [&](const VecX<LD>& z) {
      return dilate<LD>(h1, LD(1) / rho, f.eval(dilate<LD>(h1, rho, z)));
    };
    const VecX<LD> lhs2 = dilate<LD>(
        h1, LD(1) / rho,
        mollify_at<LD>(h1, h1, f, kernel, dilate<LD>(h1, rho, x), rho));
    const VecX<LD> rhs2 = mollify1<LD>(h1, h1, hmap, kernel, x);
    REQUIRE(static_cast<double>(quasi_distance_f<LD>(h1, lhs2, rhs2)) <= 1e-8);

    // (delta_r o f)_1 = delta_r o f_1.
    const LD r = 1.5L;
    SampledMapT<LD> rf;
    rf.domain = Domain::all();
    rf.eval = [&](const VecX<LD>& z) { return dilate<LD>(h1, r, f.eval(z)); };
    const VecX<LD> lhs3 = mollify1<LD>(h1, h1, rf, kernel, x);
    const VecX<LD> rhs3 = dilate<LD>(h1, r, mollify1<LD>(h1, h1, f, kernel, x));
    REQUIRE(static_cast<double>(quasi_distance_f<LD>(h1, lhs3, rhs3)) <= 1e-8);
  }

  // Constant maps are bitwise fixed points.
  SampledMapT<LD> constf;
  constf.domain = Domain::all();
  const VecX<LD> c = random_vec_d(3, rng).cast<LD>();
  constf.eval = [c](const VecX<LD>&) { return c; };
  for (const LD r : {LD(1), LD(0.25L), LD(0.1L)}) {
    const VecX<LD> x = random_vec_d(3, rng).cast<LD>();
    REQUIRE(mollify_at<LD>(h1, h1, constf, kernel, x, r) == c);
  }

  pass_line(4, "mollifier: hom fixed points, equivariance, constants exact",
            sw.seconds());
}

TEST_CASE("criterion 5: exterior suite") {
  Stopwatch sw;
  const std::vector<std::string> names = {"h1",    "h2",          "h3",
                                          "h1xh1", "h1c",         "free2_step3",
                                          "free2_step4"};
  for (const std::string& name : names) {
    const CarnotAlgebra alg = make_builtin(name);
    const ExteriorBasis& basis = ExteriorBasis::get(alg.dim());
    for (int k = 0; k <= alg.dim(); ++k) {
      for (long r = 0; r < basis.dim(k); ++r) {
        GradedFormQ f = zero_form<Rat>(alg, k);
        f.coeff[r] = Rat(1);
        REQUIRE(
            ce_differential<Rat>(alg, ce_differential<Rat>(alg, f)).is_zero());
      }
      const FormIdealBasis fib = duality_pairing(alg, k);
      REQUIRE(fib.quotient_reps.size() == ideal_J(alg, alg.dim() - k).size());
      for (const GradedFormQ& g : fib.j_basis) {
        REQUIRE(ce_differential<Rat>(alg, g).is_zero());
        const auto split = weight_split<Rat>(alg, g);
        REQUIRE(split.size() == 1);
        REQUIRE(split[0].first ==
                alg.dim() - k - static_cast<int>(alg.homogeneous_dim()));
      }
    }
  }

  // H_2 quotient dimension against an independent span-rank oracle.
  const CarnotAlgebra h2 = heisenberg(2);
  {
    const ExteriorBasis& basis = ExteriorBasis::get(5);
    MatXq span = MatXq::Zero(5, 10);
    int row = 0;
    for (int i = 0; i < 4; ++i)
      span(row++, basis.rank_of((1u << i) | (1u << 4))) = Rat(1);
    span.row(4) =
        ce_differential<Rat>(h2, basis_covector<Rat>(h2, {4})).coeff.transpose();
    REQUIRE(rank(span) == 5);
    REQUIRE(duality_pairing(h2, 2).quotient_reps.size() == 10 - 5);
  }
  REQUIRE(free_step2_obstruction(h2).has_value());

  const CarnotAlgebra h1 = heisenberg(1);
  REQUIRE(ideal_I(h1, 2).size() == 3);  // I^2 = Lambda^2
  REQUIRE_FALSE(free_step2_obstruction(h1).has_value());

  REQUIRE(sw.seconds() < 30.0);
  pass_line(5, "exterior suite: d^2 = 0, ideal duality, H_2 quotient = 5, "
               "H_1 free", sw.seconds());
}

TEST_CASE("criterion 6: Pansu differential") {
  Stopwatch sw;
  auto rng = make_rng(106);

  for (int n : {1, 2}) {
    const CarnotAlgebra h = heisenberg(n);
    for (int trial = 0; trial < 20; ++trial) {
      const MatXd a = to_double(random_heisenberg_auto(n, rng));
      const auto dp = pansu_differential_analytic(
          h, h, hom_map(a), random_vec_d(h.dim(), rng), 1e-4);
      REQUIRE(dp.has_value());
      REQUIRE((dp->map.m - a).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }

  // Rescaled-map probe on the V_2-perturbed contact family.
  const CarnotAlgebra h1 = heisenberg(1);
  const MatXd a = to_double(random_heisenberg_auto(1, rng));
  const SampledMap f = v2_quadratic_h1(a, 0.5);
  const std::vector<double> rs = {0.4, 0.2, 0.1, 0.05};
  const auto table =
      pansu_convergence_probe(h1, h1, f, VecXd::Zero(3), {a}, rs, 2.0);
  for (std::size_t i = 0; i + 1 < table.size(); ++i)
    REQUIRE(table[i + 1] < table[i]);
  REQUIRE(fitted_decay_exponent(rs, table) >= 0.8);

  // Dilations have distortion exactly 1.
  for (double lambda : {0.5, 1.0, 3.0}) {
    PansuDifferential dp;
    dp.base = VecXd::Zero(3);
    dp.map.m = MatXd::Zero(3, 3);
    dp.map.m(0, 0) = dp.map.m(1, 1) = lambda;
    dp.map.m(2, 2) = lambda * lambda;
    REQUIRE(distortion(h1, h1, dp).k == 1.0);
  }
  pass_line(6, "Pansu: analytic recovery 1e-8, rescaled decay >= 0.8, "
               "distortion(delta) = 1", sw.seconds());
}

TEST_CASE("criterion 7: approximation theorem at desk scale") {
  Stopwatch sw;
  const ExperimentConfig cfg = criterion7_config();
  const ConvergenceReport rep = run_approximation_experiment(cfg);
  REQUIRE(rep.rows.size() == 4);
  for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
    REQUIRE(rep.rows[i + 1].norm < rep.rows[i].norm);
  REQUIRE(rep.rows.back().norm <= 0.1 * rep.rows.front().norm);
  REQUIRE_FALSE(rep.pansu_side_identically_zero);

  // Weight-deficit variant: the Pansu-pullback side vanishes identically.
  std::istringstream deficit(R"(
[domain]
algebra = h1
[map]
name = contact_shear
lambda = 0.8
[omega]
template = theta:2^3
coefficient = const 1
[gamma]
template = theta:3
[experiment]
id = approx-deficit
rho = 0.4, 0.2
p = 4
grid_lo = -0.4
grid_hi = 0.4
grid_n = 7
)");
  const ConvergenceReport drep = run_approximation_experiment(
      approx_config(Config::parse_text(deficit, "deficit")));
  REQUIRE(drep.pansu_side_identically_zero);

  REQUIRE(sw.seconds() <= 300.0);
  pass_line(7, "approximation: monotone decay, final/initial <= 0.1, "
               "deficit limit = 0", sw.seconds());
}

TEST_CASE("criterion 8: exterior-derivative commutation") {
  Stopwatch sw;
  auto rng = make_rng(108);

  std::istringstream smooth(R"(
[domain]
algebra = h1
[map]
name = contact_shear
lambda = 0.8
[alpha]
template = theta:2^3
coefficient = bump 0,0,0 0.45
[beta]
template = one
[experiment]
id = dcheck-smooth
levels = 9, 18
grid_lo = -0.5
grid_hi = 0.5
p = 4
)");
  const ConvergenceReport rep = run_exterior_derivative_check(
      dcheck_config(Config::parse_text(smooth, "smooth")));
  REQUIRE(rep.rows.size() == 2);
  REQUIRE(rep.rows[1].norm <= 0.6 * rep.rows[0].norm);

  std::istringstream auto_case(R"(
[domain]
algebra = h1
[map]
name = identity
[alpha]
template = theta:2^3
coefficient = const 1
[beta]
template = one
[experiment]
id = dcheck-auto
levels = 9
grid_lo = -0.5
grid_hi = 0.5
p = 4
)");
  ExperimentConfig cfg = dcheck_config(Config::parse_text(auto_case, "auto"));
  cfg.map = hom_map(to_double(random_heisenberg_auto(1, rng)));
  const ConvergenceReport rep2 = run_exterior_derivative_check(cfg);
  REQUIRE(rep2.rows[0].norm <= 1e-9);

  pass_line(8, "d-commutation: ratio <= 0.6 per doubling, autos at <= 1e-9",
            sw.seconds());
}

TEST_CASE("criterion 9: product rigidity detection") {
  Stopwatch sw;
  auto rng = make_rng(109);
  std::uniform_int_distribution<int> flip(0, 1);

  {
    const CarnotAlgebra prod = make_builtin("h1xh1");
    const CarnotAlgebra h1 = heisenberg(1);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> perm = {0, 1};
      if (flip(rng)) std::swap(perm[0], perm[1]);
      const MatXq phi = random_product_heisenberg_auto(prod, 1, perm, rng);
      const RigidityReport rep = run_rigidity_demo(prod, h1, phi);
      REQUIRE(rep.sigma_decomposed == perm);
      REQUIRE(rep.sigma_codegree1 == rep.sigma_decomposed);
    }
  }
  {
    const CarnotAlgebra prod = make_builtin("h2xh2");
    const CarnotAlgebra h2 = heisenberg(2);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> perm = {0, 1};
      if (flip(rng)) std::swap(perm[0], perm[1]);
      const MatXq phi = random_product_heisenberg_auto(prod, 2, perm, rng);
      const RigidityReport rep = run_rigidity_demo(prod, h2, phi);
      REQUIRE(rep.sigma_decomposed == perm);
      REQUIRE(rep.sigma_codegree1 == rep.sigma_decomposed);
      REQUIRE(rep.has_two_forms);
      REQUIRE(rep.sigma_two_forms == rep.sigma_codegree1);
    }
  }
  pass_line(9, "rigidity: 50+20 random automorphisms, both form families "
               "agree with the decomposition", sw.seconds());
}

TEST_CASE("criterion 10: CSV determinism") {
  Stopwatch sw;
  ExperimentConfig cfg = criterion7_config();
  cfg.grid_per_dim = 5;
  cfg.rho_list = {0.4, 0.2};

  const std::string path_a = "acceptance_run_a.csv";
  const std::string path_b = "acceptance_run_b.csv";
  emit_csv_file(run_approximation_experiment(cfg), path_a);
  emit_csv_file(run_approximation_experiment(cfg), path_b);
  const auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(path_a);
  REQUIRE(a == slurp(path_b));
  REQUIRE(a.find("runtime_ms") != std::string::npos);
  std::remove(path_a.c_str());
  std::remove(path_b.c_str());

  // Seeded rigidity runs are byte-identical too.
  const CarnotAlgebra prod = make_builtin("h1xh1");
  const CarnotAlgebra h1 = heisenberg(1);
  std::ostringstream csv1, csv2;
  for (std::ostringstream* os : {&csv1, &csv2}) {
    auto rng = make_rng(42);
    std::uniform_int_distribution<int> flip(0, 1);
    ConvergenceReport rep;
    rep.experiment_id = "rigidity-seeded";
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> perm = {0, 1};
      if (flip(rng)) std::swap(perm[0], perm[1]);
      const MatXq phi = random_product_heisenberg_auto(prod, 1, perm, rng);
      const RigidityReport r = run_rigidity_demo(prod, h1, phi);
      rep.rows.push_back(
          {static_cast<double>(trial), r.all_match ? 1.0 : 0.0, 0.0});
    }
    emit_csv(rep, *os);
  }
  REQUIRE(csv1.str() == csv2.str());

  pass_line(10, "determinism: repeated runs give byte-identical CSV",
            sw.seconds());
}
