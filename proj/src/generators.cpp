#include "carnot/generators.hpp"

#include <stdexcept>

#include "carnot/builtins.hpp"
#include "carnot/linalg.hpp"

namespace carnot {

Rat random_rat(std::mt19937_64& rng, int max_num, int max_den, bool nonzero) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  for (;;) {
    const Rat r(num(rng), den(rng));
    if (nonzero && r.is_zero()) continue;
    return r;
  }
}

VecXq random_vec_q(int n, std::mt19937_64& rng, int max_num, int max_den) {
  VecXq v(n);
  for (int i = 0; i < n; ++i) v[i] = random_rat(rng, max_num, max_den);
  return v;
}

namespace {

MatXq random_invertible(int n, std::mt19937_64& rng) {
  for (;;) {
    MatXq m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = random_rat(rng, 3, 2);
    if (!det(m).is_zero()) return m;
  }
}

MatXq random_symmetric(int n, std::mt19937_64& rng) {
  MatXq m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      m(r, c) = random_rat(rng, 2, 2);
      m(c, r) = m(r, c);
    }
  }
  return m;
}

/// Random conformal-symplectic matrix in (q|p) block coordinates.
MatXq random_csp_qp(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<int> len(2, 4);
  MatXq m = MatXq::Identity(2 * n, 2 * n);
  const int steps = len(rng);
  for (int s = 0; s < steps; ++s) {
    MatXq g = MatXq::Identity(2 * n, 2 * n);
    switch (pick(rng)) {
      case 0:
        g.block(0, n, n, n) = random_symmetric(n, rng);
        break;
      case 1:
        g.block(n, 0, n, n) = random_symmetric(n, rng);
        break;
      case 2: {
        const MatXq p = random_invertible(n, rng);
        g.block(0, 0, n, n) = p;
        g.block(n, n, n, n) = inverse(p).transpose();
        break;
      }
      case 3:
        g.setZero();
        g.block(0, n, n, n) = MatXq::Identity(n, n);
        g.block(n, 0, n, n) = -MatXq::Identity(n, n);
        break;
      default:
        g.setZero();
        g.block(0, n, n, n) = MatXq::Identity(n, n);
        g.block(n, 0, n, n) = MatXq::Identity(n, n);
        break;
    }
    m = MatXq(m * g);
  }
  return m * random_rat(rng, 3, 2, /*nonzero=*/true);
}

/// Horizontal block of a random graded automorphism of heisenberg(n), in the
/// interleaved basis (q_1, p_1, q_2, p_2, ...).
MatXq random_heisenberg_v1(int n, std::mt19937_64& rng) {
  const MatXq qp = random_csp_qp(n, rng);
  MatXq perm = MatXq::Zero(2 * n, 2 * n);  // (q|p) index <- interleaved index
  for (int i = 0; i < n; ++i) {
    perm(i, 2 * i) = Rat(1);
    perm(n + i, 2 * i + 1) = Rat(1);
  }
  return MatXq(perm.transpose() * qp * perm);
}

}  // namespace

MatXq random_heisenberg_auto(int n, std::mt19937_64& rng) {
  const CarnotAlgebra h = heisenberg(n);
  const auto full = extend_horizontal_block(h, h, random_heisenberg_v1(n, rng));
  if (!full) throw std::logic_error("random_heisenberg_auto: extension failed");
  return *full;
}

MatXq random_free2_auto(const CarnotAlgebra& alg, std::mt19937_64& rng) {
  if (alg.layer_dim(1) != 2)
    throw std::invalid_argument("random_free2_auto: two generators expected");
  const auto full =
      extend_horizontal_block(alg, alg, random_invertible(2, rng));
  if (!full) throw std::logic_error("random_free2_auto: extension failed");
  return *full;
}

MatXq random_product_heisenberg_auto(const CarnotAlgebra& prod, int n,
                                     const std::vector<int>& perm,
                                     std::mt19937_64& rng) {
  const auto& factors = prod.factors();
  if (factors.size() != perm.size())
    throw std::invalid_argument("random_product_heisenberg_auto: perm size");
  MatXq v1 = MatXq::Zero(prod.layer_dim(1), prod.layer_dim(1));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const MatXq block = random_heisenberg_v1(n, rng);
    const auto& src = factors[i].global_idx;
    const auto& dst = factors[perm[i]].global_idx;
    for (int r = 0; r < 2 * n; ++r)
      for (int c = 0; c < 2 * n; ++c) v1(dst[r], src[c]) = block(r, c);
  }
  const auto full = extend_horizontal_block(prod, prod, v1);
  if (!full)
    throw std::logic_error("random_product_heisenberg_auto: extension failed");
  return *full;
}

MatXq random_heisenberg_hom(int n_src, int n_dst, std::mt19937_64& rng) {
  if (n_dst < n_src)
    throw std::invalid_argument("random_heisenberg_hom: n_dst >= n_src");
  MatXq embed = MatXq::Zero(2 * n_dst, 2 * n_src);
  for (int i = 0; i < 2 * n_src; ++i) embed(i, i) = Rat(1);
  const MatXq v1 = MatXq(random_heisenberg_v1(n_dst, rng) * embed *
                         random_heisenberg_v1(n_src, rng));
  const auto full =
      extend_horizontal_block(heisenberg(n_src), heisenberg(n_dst), v1);
  if (!full) throw std::logic_error("random_heisenberg_hom: extension failed");
  return *full;
}

}  // namespace carnot
