#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/algebra.hpp"
#include "carnot/builtins.hpp"
#include "carnot/generators.hpp"
#include "carnot/linalg.hpp"
#include "test_util.hpp"

using namespace carnot;
using carnot::testing::basis_vec_q;
using carnot::testing::make_rng;

TEST_CASE("validate_algebra accepts the built-ins") {
  for (const auto& name : builtin_names()) {
    const CarnotAlgebra alg = make_builtin(name);
    const ValidationReport rep = validate_algebra(alg);
    INFO(name, ": ", rep.axiom, " ", rep.message);
    CHECK(rep.ok);
  }
}

TEST_CASE("validate_algebra flags an antisymmetry violation") {
  // c[1][2][3] = 1 together with c[2][1][3] = 1.
  const CarnotAlgebra bad({2, 1}, {{0, 1, 2, Rat(1)}, {1, 0, 2, Rat(1)}});
  const ValidationReport rep = validate_algebra(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "antisymmetry");
  CHECK(rep.witness == std::array<int, 3>{0, 1, 2});

  CHECK_THROWS_AS(CarnotAlgebra({2, 1}, {{0, 1, 2, Rat(1)}, {0, 1, 2, Rat(1)}}),
                  std::invalid_argument);
}

TEST_CASE("validate_algebra flags grading violations") {
  // [e_1, e_2] = e_1 lands outside V_2.
  const CarnotAlgebra bad({2, 1}, {{0, 1, 0, Rat(1)}});
  const ValidationReport rep = validate_algebra(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "grading");
}

TEST_CASE("validate_algebra flags a non-generating grading") {
  // layers (2,1,1) with only [e_1,e_2]=e_3: V_3 is unreachable.
  const CarnotAlgebra bad({2, 1, 1}, {{0, 1, 2, Rat(1)}});
  const ValidationReport rep = validate_algebra(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "bracket_generating");
  CHECK(rep.witness[0] == 2);
}

TEST_CASE("validate_algebra flags Jacobi failures") {
  // free2_step4 with [e0,e4] redirected from e6 to e7:
  // Jacobi(e0,e1,e2) = [e0,e4] - [e1,e3] = e7 - e6 != 0.
  const CarnotAlgebra bad({2, 1, 2, 3}, {{0, 1, 2, Rat(1)},
                                         {0, 2, 3, Rat(1)},
                                         {1, 2, 4, Rat(1)},
                                         {0, 3, 5, Rat(1)},
                                         {1, 3, 6, Rat(1)},
                                         {0, 4, 7, Rat(1)},
                                         {1, 4, 7, Rat(1)}});
  const ValidationReport rep = validate_algebra(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == "jacobi");
}

TEST_CASE("bracket matches the defining relations on H_1 and H_2") {
  const CarnotAlgebra h1 = heisenberg(1);
  CHECK(bracket<Rat>(h1, basis_vec_q(3, 0), basis_vec_q(3, 1)) ==
        basis_vec_q(3, 2));

  auto rng = make_rng(7);
  const VecXq x = random_vec_q(3, rng);
  CHECK(vec_is_zero(bracket<Rat>(h1, x, x)));

  // H_2: [e_1 + e_3, e_2 + e_4] = 2 e_5 (expanded bilinearly by hand).
  const CarnotAlgebra h2 = heisenberg(2);
  const VecXq u = basis_vec_q(5, 0) + basis_vec_q(5, 2);
  const VecXq v = basis_vec_q(5, 1) + basis_vec_q(5, 3);
  CHECK(bracket<Rat>(h2, u, v) == VecXq(basis_vec_q(5, 4) * Rat(2)));
}

TEST_CASE("bracket rejects dimension mismatches") {
  const CarnotAlgebra h1 = heisenberg(1);
  CHECK_THROWS_AS(bracket<Rat>(h1, VecXq::Zero(2), VecXq::Zero(3)),
                  std::invalid_argument);
}

TEST_CASE("dilate scales layers by r^j") {
  const CarnotAlgebra h1 = heisenberg(1);
  VecXq x(3);
  x << Rat(1), Rat(1), Rat(1);
  VecXq expect(3);
  expect << Rat(2), Rat(2), Rat(4);
  CHECK(dilate<Rat>(h1, Rat(2), x) == expect);
  CHECK(dilate<Rat>(h1, Rat(1), x) == x);

  VecXq y(3);
  y << Rat(2), Rat(0), Rat(4);
  VecXq y_half(3);
  y_half << Rat(1), Rat(0), Rat(1);
  CHECK(dilate<Rat>(h1, Rat(1, 2), y) == y_half);

  CHECK_THROWS_AS(dilate<Rat>(h1, Rat(0), x), std::invalid_argument);
  CHECK_THROWS_AS(dilate<Rat>(h1, Rat(-1), x), std::invalid_argument);

  auto rng = make_rng(3);
  const VecXq z = random_vec_q(3, rng);
  CHECK(dilate<Rat>(h1, Rat(6), z) ==
        dilate<Rat>(h1, Rat(2), dilate<Rat>(h1, Rat(3), z)));
}

TEST_CASE("homogeneous norm: examples and exact scaling") {
  const CarnotAlgebra h1 = heisenberg(1);
  VecXd a(3);
  a << 3, 4, 0;
  CHECK(homogeneous_norm(h1, a) == doctest::Approx(5.0).epsilon(1e-14));
  VecXd b(3);
  b << 0, 0, 4;
  CHECK(homogeneous_norm(h1, b) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(homogeneous_norm(h1, VecXd(VecXd::Zero(3))) == 0.0);

  // |delta_r X|^{2m!} = r^{2m!} |X|^{2m!} exactly over rationals.
  auto rng = make_rng(11);
  for (const char* name : {"h1", "h2", "free2_step3", "free2_step4"}) {
    const CarnotAlgebra alg = make_builtin(name);
    const long e = 2 * factorial(alg.step());
    for (int trial = 0; trial < 25; ++trial) {
      const VecXq x = random_vec_q(alg.dim(), rng);
      const Rat r = random_rat(rng, 5, 3, /*nonzero=*/true);
      const Rat rabs = abs(r);
      CHECK(homogeneous_norm_pow<Rat>(alg, dilate<Rat>(alg, rabs, x)) ==
            pow_int(rabs, e) * homogeneous_norm_pow<Rat>(alg, x));
    }
  }

  // Float mode keeps the scaling identity to 1e-12 relative.
  for (int trial = 0; trial < 50; ++trial) {
    VecXd x = carnot::testing::random_vec_d(3, rng, 2.0);
    std::uniform_real_distribution<double> uni(0.1, 10.0);
    const double r = uni(rng);
    const double lhs = homogeneous_norm(h1, dilate<double>(h1, r, x));
    const double rhs = r * homogeneous_norm(h1, x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("homogeneous norm survives extreme scales") {
  const CarnotAlgebra h4 = free_nilpotent2(4);
  VecXd tiny = VecXd::Constant(h4.dim(), 1e-9);
  VecXd huge = VecXd::Constant(h4.dim(), 1e9);
  CHECK(homogeneous_norm(h4, tiny) > 0.0);
  CHECK(std::isfinite(homogeneous_norm(h4, huge)));
}

TEST_CASE("euclidean vs homogeneous comparability on the unit sphere") {
  auto rng = make_rng(2024);
  const CarnotAlgebra h2 = heisenberg(2);
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const VecXd x = random_unit_vector(h2, rng);
    const double e = euclidean_norm(h2, x);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  CHECK(lo > 0.0);
  CHECK(std::isfinite(hi));
}

TEST_CASE("project_layer slices coordinates") {
  const CarnotAlgebra h1 = heisenberg(1);
  VecXq x(3);
  x << Rat(1), Rat(2), Rat(3);
  VecXq p1(3), p2(3);
  p1 << Rat(1), Rat(2), Rat(0);
  p2 << Rat(0), Rat(0), Rat(3);
  CHECK(project_layer<Rat>(h1, 1, x) == p1);
  CHECK(project_layer<Rat>(h1, 2, x) == p2);
  CHECK_THROWS_AS(project_layer<Rat>(h1, 3, x), std::invalid_argument);
}

TEST_CASE("decompose_product_automorphism: swap, diagonal, reassembly") {
  const CarnotAlgebra prod = make_builtin("h1xh1");
  const auto& f = prod.factors();
  REQUIRE(f.size() == 2);

  // Swap map (x, y) -> (y, x).
  MatXq swap = MatXq::Zero(6, 6);
  for (int i = 0; i < 3; ++i) {
    swap(f[1].global_idx[i], f[0].global_idx[i]) = Rat(1);
    swap(f[0].global_idx[i], f[1].global_idx[i]) = Rat(1);
  }
  const auto dec = decompose_product_automorphism(prod, {swap});
  REQUIRE(dec.ok);
  CHECK(dec.sigma == std::vector<int>{1, 0});
  CHECK(dec.factor_maps[0] == MatXq::Identity(3, 3));
  CHECK(reassemble_product_automorphism(prod, dec) == swap);

  // Block diagonal (A, B).
  auto rng = make_rng(5);
  const MatXq a = random_heisenberg_auto(1, rng);
  const MatXq b = random_heisenberg_auto(1, rng);
  MatXq diag = MatXq::Zero(6, 6);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      diag(f[0].global_idx[r], f[0].global_idx[c]) = a(r, c);
      diag(f[1].global_idx[r], f[1].global_idx[c]) = b(r, c);
    }
  const auto dec2 = decompose_product_automorphism(prod, {diag});
  REQUIRE(dec2.ok);
  CHECK(dec2.sigma == std::vector<int>{0, 1});
  CHECK(dec2.factor_maps[0] == a);
  CHECK(dec2.factor_maps[1] == b);
  CHECK(reassemble_product_automorphism(prod, dec2) == diag);

  // Randomized: permuting autos decompose and reassemble exactly.
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> perm = {0, 1};
    if (trial % 2) std::swap(perm[0], perm[1]);
    const MatXq phi = random_product_heisenberg_auto(prod, 1, perm, rng);
    const auto d = decompose_product_automorphism(prod, {phi});
    REQUIRE(d.ok);
    CHECK(d.sigma == perm);
    CHECK(reassemble_product_automorphism(prod, d) == phi);
  }
}

TEST_CASE("decompose_product_automorphism rejects bad inputs") {
  const CarnotAlgebra prod = make_builtin("h1xh1");
  // Not invertible.
  const auto dec = decompose_product_automorphism(prod, {MatXq::Zero(6, 6)});
  CHECK_FALSE(dec.ok);

  // A graded linear map that genuinely mixes the two factors cannot be a
  // homomorphism; the operation reports why.
  MatXq mix = MatXq::Identity(6, 6);
  const auto& f = prod.factors();
  mix(f[1].global_idx[0], f[0].global_idx[0]) = Rat(1);
  const auto dec2 = decompose_product_automorphism(prod, {mix});
  CHECK_FALSE(dec2.ok);
  CHECK(dec2.error == "map is not a Lie algebra homomorphism");

  // Non-product algebra.
  const auto dec3 = decompose_product_automorphism(
      heisenberg(1), {MatXq::Identity(3, 3)});
  CHECK_FALSE(dec3.ok);
}

TEST_CASE("complexify: abelian line and H_1") {
  const CarnotAlgebra line({1}, {});
  const Complexified cline = complexify(line);
  CHECK(cline.alg.dim() == 2);
  CHECK(cline.alg.layer_dims() == std::vector<int>{2});
  CHECK(MatXq(cline.j * cline.j) == MatXq(-MatXq::Identity(2, 2)));

  const Complexified ch1 = complexify(heisenberg(1));
  CHECK(ch1.alg.layer_dims() == std::vector<int>{4, 2});
  CHECK(validate_algebra(ch1.alg).ok);
  CHECK(MatXq(ch1.j * ch1.j) == MatXq(-MatXq::Identity(6, 6)));

  // J commutes with dilations (block scalar per layer).
  const MatXq d2 = dilation_hom<Rat>(ch1.alg, Rat(2)).m;
  CHECK(MatXq(ch1.j * d2) == MatXq(d2 * ch1.j));

  // C-bilinearity: [e_1, J e_2] = J [e_1, e_2].
  const int n = ch1.alg.dim();
  const VecXq e1 = basis_vec_q(n, 0);
  const VecXq je2 = VecXq(ch1.j * basis_vec_q(n, 2));
  const VecXq lhs = bracket<Rat>(ch1.alg, e1, je2);
  const VecXq rhs = VecXq(ch1.j * bracket<Rat>(ch1.alg, e1, basis_vec_q(n, 2)));
  CHECK(lhs == rhs);
}

TEST_CASE("classify_j_linearity: identity, conjugation, composition") {
  const Complexified c = complexify(heisenberg(1));
  const int n = c.alg.dim();

  CHECK(classify_j_linearity(c.alg, c.j, MatXq::Identity(n, n)) ==
        JLinearity::Linear);

  // Conjugation: e_k -> e_k, J e_k -> -J e_k.
  MatXq conj = MatXq::Identity(n, n);
  for (int a = 0; a < n; a += 2) conj(a + 1, a + 1) = Rat(-1);
  REQUIRE(is_graded_hom(c.alg, c.alg, conj));
  CHECK(classify_j_linearity(c.alg, c.j, conj) == JLinearity::Antilinear);

  // Composition: linear after antilinear is antilinear; J itself extends to
  // a J-linear graded map on each layer (scalar i acting layerwise is not a
  // Lie homomorphism, so use conj composed with conj).
  CHECK(classify_j_linearity(c.alg, c.j, MatXq(conj * conj)) ==
        JLinearity::Linear);

  // phi J = J phi on V_1 but not above: perturb the conjugation's V_2 block.
  MatXq neither = MatXq::Identity(n, n);
  neither(5, 5) = Rat(-1);
  CHECK(classify_j_linearity(c.alg, c.j, neither, /*check_hom=*/false) ==
        JLinearity::Neither);
  CHECK_THROWS_AS(classify_j_linearity(c.alg, c.j, neither),
                  std::invalid_argument);
}

TEST_CASE("direct products merge layers and keep factor metadata") {
  // Heterogeneous factors: layers merge per level, A's block first.
  const CarnotAlgebra prod = direct_product(heisenberg(1), heisenberg(2));
  CHECK(prod.layer_dims() == std::vector<int>{6, 2});
  CHECK(validate_algebra(prod).ok);
  CHECK(prod.homogeneous_dim() == 4 + 6);
  REQUIRE(prod.factors().size() == 2);
  const auto& f = prod.factors();
  CHECK(f[0].global_idx == std::vector<int>{0, 1, 6});
  CHECK(f[1].global_idx == std::vector<int>{2, 3, 4, 5, 7});

  // Brackets stay inside their factor.
  const int n = prod.dim();
  const VecXq b1 = bracket<Rat>(prod, basis_vec_q(n, 0), basis_vec_q(n, 1));
  CHECK(b1 == basis_vec_q(n, 6));
  const VecXq b2 = bracket<Rat>(prod, basis_vec_q(n, 2), basis_vec_q(n, 3));
  CHECK(b2 == basis_vec_q(n, 7));
  CHECK(vec_is_zero(bracket<Rat>(prod, basis_vec_q(n, 0), basis_vec_q(n, 2))));

  // Different steps also merge: H_1 x free2_step3.
  const CarnotAlgebra mixed = direct_product(heisenberg(1), free_nilpotent2(3),
                                             /*indecomposable=*/false);
  CHECK(mixed.layer_dims() == std::vector<int>{4, 2, 2});
  CHECK(validate_algebra(mixed).ok);

  // Triple products flatten to three factors.
  const CarnotAlgebra triple =
      direct_product(direct_product(heisenberg(1), heisenberg(1)),
                     heisenberg(1));
  CHECK(triple.factors().size() == 3);
  CHECK(validate_algebra(triple).ok);
}

TEST_CASE("classify_j_linearity composes as expected on sampled autos") {
  const Complexified c = complexify(heisenberg(1));
  const int n = c.alg.dim();
  MatXq conj = MatXq::Identity(n, n);
  for (int a = 0; a < n; a += 2) conj(a + 1, a + 1) = Rat(-1);

  // Complexifying a real graded auto entrywise gives a J-linear auto.
  auto complexify_auto = [&](const MatXq& real) {
    MatXq m = MatXq::Zero(n, n);
    for (int r = 0; r < n / 2; ++r)
      for (int col = 0; col < n / 2; ++col) {
        m(2 * r, 2 * col) = real(r, col);
        m(2 * r + 1, 2 * col + 1) = real(r, col);
      }
    return m;
  };

  auto rng = make_rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const MatXq lin = complexify_auto(random_heisenberg_auto(1, rng));
    REQUIRE(is_graded_hom(c.alg, c.alg, lin));
    CHECK(classify_j_linearity(c.alg, c.j, lin) == JLinearity::Linear);
    const MatXq anti = MatXq(lin * conj);
    CHECK(classify_j_linearity(c.alg, c.j, anti) == JLinearity::Antilinear);
    // antilinear o antilinear = linear; linear o antilinear = antilinear.
    CHECK(classify_j_linearity(c.alg, c.j, MatXq(anti * conj)) ==
          JLinearity::Linear);
    CHECK(classify_j_linearity(c.alg, c.j, MatXq(conj * lin)) ==
          JLinearity::Antilinear);
  }
}

TEST_CASE("homogeneous quasi-norm: empirical quasi-triangle constant") {
  // |X + Y| <= C (|X| + |Y|): estimate C over samples and log it; the spec
  // constant is algebra-dependent and never asserted as a number.
  auto rng = make_rng(20);
  for (const char* name : {"h1", "free2_step3"}) {
    const CarnotAlgebra alg = make_builtin(name);
    double worst = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
      const VecXd x = random_unit_vector(alg, rng);
      const VecXd y = dilate<double>(
          alg, std::uniform_real_distribution<double>(0.05, 1.0)(rng),
          random_unit_vector(alg, rng));
      const double ratio = homogeneous_norm(alg, VecXd(x + y)) /
                           (homogeneous_norm(alg, x) + homogeneous_norm(alg, y));
      worst = std::max(worst, ratio);
    }
    CHECK(worst > 0.0);
    CHECK(std::isfinite(worst));
    MESSAGE("quasi-triangle constant estimate for ", name, ": ", worst);
  }
}

TEST_CASE("extend_horizontal_block reproduces graded autos from V_1 data") {
  auto rng = make_rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const MatXq full = random_heisenberg_auto(2, rng);
    const auto again = extend_horizontal_block(
        heisenberg(2), heisenberg(2), MatXq(full.block(0, 0, 4, 4)));
    REQUIRE(again.has_value());
    CHECK(*again == full);
  }
  // A horizontal block violating the bracket relations does not extend:
  // for H_2 take a block collapsing the symplectic form asymmetrically.
  MatXq bad = MatXq::Zero(4, 4);
  bad(0, 0) = Rat(1);
  bad(1, 1) = Rat(1);  // omega(e3,e4) -> 0 while omega(e1,e2) -> 1
  CHECK_FALSE(extend_horizontal_block(heisenberg(2), heisenberg(2), bad)
                  .has_value());
}
