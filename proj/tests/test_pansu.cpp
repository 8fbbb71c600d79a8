#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/builtins.hpp"
#include "carnot/generators.hpp"
#include "carnot/maps.hpp"
#include "carnot/pansu.hpp"
#include "test_util.hpp"

using namespace carnot;
using carnot::testing::make_rng;
using carnot::testing::random_vec_d;

namespace {

const CarnotAlgebra& h1() {
  static const CarnotAlgebra alg = heisenberg(1);
  return alg;
}

}  // namespace

TEST_CASE("rescaled_map: homs are scale-invariant, identity fixed") {
  auto rng = make_rng(70);
  const MatXd phi = to_double(random_heisenberg_auto(1, rng));
  const SampledMap f = hom_map(phi);
  const VecXd x = random_vec_d(3, rng);

  for (double r : {1.0, 0.5, 0.1}) {
    const SampledMap fr = rescaled_map(h1(), h1(), f, x, r);
    CHECK(fr.eval(VecXd::Zero(3)) == VecXd::Zero(3));  // e fixed, bitwise
    for (int trial = 0; trial < 5; ++trial) {
      const VecXd q = random_vec_d(3, rng);
      CHECK(quasi_distance<double>(h1(), fr.eval(q), VecXd(phi * q)) < 1e-6);
    }
  }

  // The translation/dilation round trip leaves ~1e-16 coordinate dust,
  // which the quasi-distance sees at the 1e-8 scale.
  const SampledMap idr =
      rescaled_map(h1(), h1(), identity_map(3), x, 0.3);
  for (int trial = 0; trial < 5; ++trial) {
    const VecXd q = random_vec_d(3, rng);
    CHECK(quasi_distance<double>(h1(), idr.eval(q), q) < 1e-6);
  }

  CHECK_THROWS_AS(rescaled_map(h1(), h1(), f, x, 0.0), std::invalid_argument);
}

TEST_CASE("pansu_differential_analytic recovers graded autos") {
  auto rng = make_rng(71);
  for (int n : {1, 2}) {
    const CarnotAlgebra h = heisenberg(n);
    for (int trial = 0; trial < 10; ++trial) {
      const MatXd a = to_double(random_heisenberg_auto(n, rng));
      const auto dp = pansu_differential_analytic(
          h, h, hom_map(a), random_vec_d(h.dim(), rng));
      REQUIRE(dp.has_value());
      CHECK((dp->map.m - a).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(dp->residual < 1e-8);
    }
  }
}

TEST_CASE("pansu_differential_analytic: translations and dilations") {
  auto rng = make_rng(72);
  const VecXd a = random_vec_d(3, rng);
  const auto dp =
      pansu_differential_analytic(h1(), h1(), left_translation_map(h1(), a),
                                  random_vec_d(3, rng));
  REQUIRE(dp.has_value());
  CHECK((dp->map.m - MatXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);

  const auto dp2 = pansu_differential_analytic(
      h1(), h1(), dilation_map(h1(), 1.5), random_vec_d(3, rng));
  REQUIRE(dp2.has_value());
  CHECK((dp2->map.m - to_double(dilation_hom<Rat>(h1(), Rat(3, 2)).m))
            .cwiseAbs()
            .maxCoeff() < 1e-8);
}

TEST_CASE("pansu_differential_analytic on the V_2-perturbed family") {
  auto rng = make_rng(73);
  const MatXd a = to_double(random_heisenberg_auto(1, rng));
  const SampledMap f = v2_quadratic_h1(a, 0.35);
  // The abelianization is linear, so the recovered differential is the graded
  // part of A at every base point, with vanishing residual.
  for (int trial = 0; trial < 5; ++trial) {
    const auto dp =
        pansu_differential_analytic(h1(), h1(), f, random_vec_d(3, rng));
    REQUIRE(dp.has_value());
    CHECK((dp->map.m - a).cwiseAbs().maxCoeff() < 1e-7);
  }
  // Residual shrinks with the step for the smooth family.
  const VecXd x0 = random_vec_d(3, rng);
  const auto coarse = pansu_differential_analytic(h1(), h1(), f, x0, 1e-2);
  const auto fine = pansu_differential_analytic(h1(), h1(), f, x0, 1e-4);
  REQUIRE(coarse.has_value());
  REQUIRE(fine.has_value());
  CHECK(fine->residual <= coarse->residual + 1e-12);
}

TEST_CASE("pansu_differential_analytic rejects non-contact horizontal data") {
  // A horizontal differential collapsing one symplectic pair of H_2 but not
  // the other cannot extend to a graded homomorphism.
  const CarnotAlgebra h2 = heisenberg(2);
  MatXd b = MatXd::Zero(5, 5);
  b(0, 0) = b(1, 1) = 1.0;  // omega on (e1,e2) survives, (e3,e4) dies
  const auto dp = pansu_differential_analytic(h2, h2, hom_map(b),
                                              VecXd::Zero(5), 1e-4, 1e-6);
  CHECK_FALSE(dp.has_value());
}

TEST_CASE("contact shear: analytic differential matches the closed form") {
  auto rng = make_rng(74);
  const double lambda = 0.8;
  const SampledMap f = contact_shear_h1(lambda);
  for (int trial = 0; trial < 5; ++trial) {
    const VecXd x = random_vec_d(3, rng);
    const auto dp = pansu_differential_analytic(h1(), h1(), f, x);
    REQUIRE(dp.has_value());
    const MatXd b = contact_shear_h1_differential(lambda, x);
    CHECK((dp->map.m.block(0, 0, 2, 2) - b).cwiseAbs().maxCoeff() < 1e-7);
    CHECK(dp->map.m(2, 2) == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("chain rule: D_P(phi o f) = phi o D_P f for graded homs") {
  auto rng = make_rng(75);
  const SampledMap f = contact_shear_h1(0.6);
  const MatXd phi = to_double(random_heisenberg_hom(1, 2, rng));
  const CarnotAlgebra h2 = heisenberg(2);
  SampledMap composed;
  composed.domain = Domain::all();
  composed.eval = [&](const VecXd& x) { return VecXd(phi * f.eval(x)); };
  for (int trial = 0; trial < 5; ++trial) {
    const VecXd x = random_vec_d(3, rng);
    const auto dpf = pansu_differential_analytic(h1(), h1(), f, x);
    const auto dpc = pansu_differential_analytic(h1(), h2, composed, x);
    REQUIRE(dpf.has_value());
    REQUIRE(dpc.has_value());
    CHECK((dpc->map.m - phi * dpf->map.m).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("pansu_pullback: dilations, null convention, weight scaling") {
  const CarnotAlgebra h = h1();
  PansuDifferential dil;
  dil.base = VecXd::Zero(3);
  dil.map.m = to_double(dilation_hom<Rat>(h, Rat(2)).m);

  const CoefficientForm vol = CoefficientForm::left_invariant(
      to_double(vol_form<Rat>(h)));
  const GradedFormD pulled = pansu_pullback(h, h, dil, vol, VecXd::Zero(3));
  CHECK(pulled.coeff[0] == doctest::Approx(16.0));  // 2^nu

  PansuDifferential null;
  null.base = VecXd::Zero(3);
  null.map.m = MatXd::Zero(3, 3);
  CHECK(pansu_pullback(h, h, null, vol, VecXd::Zero(3)).is_zero());

  // Weight -2 template scales by r^2 under delta_r pullback.
  const CoefficientForm t3 = CoefficientForm::left_invariant(
      to_double(basis_covector<Rat>(h, {2})));
  const GradedFormD pulled3 = pansu_pullback(h, h, dil, t3, VecXd::Zero(3));
  CHECK(pulled3.coeff ==
        VecXd(4.0 * to_double(basis_covector<Rat>(h, {2})).coeff));

  // Wedge multiplicativity against the exterior module on random homs.
  auto rng = make_rng(76);
  const GradedHomQ phi{random_heisenberg_auto(1, rng)};
  PansuDifferential dp;
  dp.base = VecXd::Zero(3);
  dp.map.m = to_double(phi.m);
  const GradedFormD a = to_double(basis_covector<Rat>(h, {0}));
  const GradedFormD b = to_double(basis_covector<Rat>(h, {1, 2}));
  const GradedFormD lhs = pansu_pullback(
      h, h, dp, CoefficientForm::left_invariant(wedge<double>(h, a, b)),
      VecXd::Zero(3));
  const GradedFormD rhs = wedge<double>(
      h,
      pansu_pullback(h, h, dp, CoefficientForm::left_invariant(a),
                     VecXd::Zero(3)),
      pansu_pullback(h, h, dp, CoefficientForm::left_invariant(b),
                     VecXd::Zero(3)));
  CHECK((lhs.coeff - rhs.coeff).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("distortion: dilations are 1-quasiregular, conventions hold") {
  for (double lambda : {0.5, 1.0, 3.0}) {
    PansuDifferential dp;
    dp.base = VecXd::Zero(3);
    dp.map.m = MatXd::Zero(3, 3);
    dp.map.m(0, 0) = dp.map.m(1, 1) = lambda;
    dp.map.m(2, 2) = lambda * lambda;
    const DistortionReport rep = distortion(h1(), h1(), dp);
    CHECK(rep.horizontal_norm == lambda);
    CHECK(rep.finite);
    CHECK(rep.k == 1.0);
  }

  // diag(2,1) on V_1 forces V_2 = 2: K = 2^4 / 4 = 4.
  MatXq v1 = MatXq::Zero(2, 2);
  v1(0, 0) = Rat(2);
  v1(1, 1) = Rat(1);
  const auto full = extend_horizontal_block(h1(), h1(), v1);
  REQUIRE(full.has_value());
  PansuDifferential dp;
  dp.base = VecXd::Zero(3);
  dp.map.m = to_double(*full);
  CHECK(dp.map.m(2, 2) == 2.0);
  const DistortionReport rep = distortion(h1(), h1(), dp);
  CHECK(rep.horizontal_norm == 2.0);
  CHECK(rep.det == doctest::Approx(4.0));
  CHECK(rep.k == doctest::Approx(4.0));

  // Orientation-reversing data flags K = infinity.
  PansuDifferential bad;
  bad.base = VecXd::Zero(3);
  bad.map.m = MatXd::Identity(3, 3);
  bad.map.m(2, 2) = -1.0;
  const DistortionReport rep2 = distortion(h1(), h1(), bad);
  CHECK_FALSE(rep2.finite);
  CHECK(std::isinf(rep2.k));
}

TEST_CASE("distortion is dilation-invariant") {
  auto rng = make_rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    PansuDifferential dp;
    dp.base = VecXd::Zero(3);
    dp.map.m = to_double(random_heisenberg_auto(1, rng));
    const DistortionReport base = distortion(h1(), h1(), dp);
    PansuDifferential scaled;
    scaled.base = dp.base;
    scaled.map.m =
        dp.map.m * to_double(dilation_hom<Rat>(h1(), Rat(3)).m);
    const DistortionReport after = distortion(h1(), h1(), scaled);
    if (base.finite) {
      CHECK(after.k == doctest::Approx(base.k).epsilon(1e-10));
    } else {
      CHECK_FALSE(after.finite);
    }
  }
}

TEST_CASE("rescaled maps are self-consistent across scales") {
  // sup over a small grid of d(f_{x,r}, f_{x,r/2}) shrinks roughly by the
  // halving factor for the smooth perturbed family.
  auto rng = make_rng(79);
  const MatXd a = to_double(random_heisenberg_auto(1, rng));
  const SampledMap f = v2_quadratic_h1(a, 0.5);
  const VecXd x = VecXd::Zero(3);
  std::vector<double> sups;
  for (double r : {0.4, 0.2, 0.1}) {
    const SampledMap fr = rescaled_map(h1(), h1(), f, x, r);
    const SampledMap fr2 = rescaled_map(h1(), h1(), f, x, r / 2);
    double sup = 0.0;
    for (double qa : {-0.5, 0.0, 0.5})
      for (double qb : {-0.5, 0.0, 0.5})
        for (double qc : {-0.5, 0.0, 0.5}) {
          VecXd q(3);
          q << qa, qb, qc;
          sup = std::max(sup,
                         quasi_distance<double>(h1(), fr.eval(q), fr2.eval(q)));
        }
    sups.push_back(sup);
  }
  CHECK(sups[1] < sups[0]);
  CHECK(sups[2] < sups[1]);
  CHECK(sups[1] / sups[0] == doctest::Approx(0.5).epsilon(0.45));
  CHECK(sups[2] / sups[1] == doctest::Approx(0.5).epsilon(0.45));
}

TEST_CASE("pansu_convergence_probe: homs flat, perturbed family decays") {
  auto rng = make_rng(78);
  const MatXd a = to_double(random_heisenberg_auto(1, rng));
  const std::vector<double> rs = {0.4, 0.2, 0.1, 0.05};

  // Rescaling dust grows like 1/r^2 on the vertical layer before the
  // quasi-distance root; 1e-6 covers the smallest scale.
  const auto flat = pansu_convergence_probe(h1(), h1(), hom_map(a),
                                            random_vec_d(3, rng), {a}, rs, 2.0);
  for (double d : flat) CHECK(d < 1e-6);

  const auto identity_tab = pansu_convergence_probe(
      h1(), h1(), identity_map(3), random_vec_d(3, rng),
      {MatXd::Identity(3, 3)}, rs, 4.0);
  for (double d : identity_tab) CHECK(d < 1e-6);

  // V_2-perturbed family at the identity: the vertical r^2 discrepancy reads
  // as O(r) through the quasi-distance.
  const SampledMap f = v2_quadratic_h1(a, 0.5);
  const auto table =
      pansu_convergence_probe(h1(), h1(), f, VecXd::Zero(3), {a}, rs, 2.0);
  for (std::size_t i = 0; i + 1 < table.size(); ++i)
    CHECK(table[i + 1] < table[i]);
  CHECK(fitted_decay_exponent(rs, table) >= 0.8);
}
