#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "carnot/algebra.hpp"

namespace carnot {

template <class S>
bool vec_is_zero(const VecX<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!(v[i] == S(0))) return false;
  return true;
}

/// One multilinear term of the BCH polynomial P(X,Y): `coeff` times the
/// right-nested bracket of the letter word encoded in `bits` (bit t set means
/// letter t is Y, clear means X; t = 0 is the outermost letter).
struct BchTerm {
  Rat coeff;
  double coeff_d = 0.0;
  int len = 0;
  std::uint32_t bits = 0;
};

/// The BCH polynomial for a fixed nilpotency step, as a sparse term list.
/// Terms of bracket length > step are absent; so are words whose innermost
/// bracket vanishes identically. P(X,0) = P(0,Y) = 0 by construction (every
/// surviving word contains both letters).
struct BchTable {
  int step = 0;
  std::vector<BchTerm> terms;
};

/// Cached table for the given step; built once, thread-safe. Steps above 6
/// throw std::invalid_argument (term growth is out of scope past that).
const BchTable& bch_table(int step);

/// P(X,Y) = log(exp X exp Y) - X - Y, exact over rationals.
template <class S>
VecX<S> bch_P(const CarnotAlgebra& alg, const VecX<S>& x, const VecX<S>& y) {
  const BchTable& table = bch_table(alg.step());
  VecX<S> out = VecX<S>::Zero(alg.dim());
  for (const BchTerm& t : table.terms) {
    VecX<S> v = (t.bits >> (t.len - 1)) & 1u ? y : x;
    for (int pos = t.len - 2; pos >= 0; --pos) {
      v = bracket<S>(alg, (t.bits >> pos) & 1u ? y : x, v);
      if (vec_is_zero(v)) break;
    }
    if constexpr (scalar_traits<S>::exact) {
      out += v * t.coeff;
    } else {
      out += v * t.coeff_d;
    }
  }
  return out;
}

/// Group multiplication in exponential coordinates: x * y = x + y + P(x,y).
template <class S>
VecX<S> group_mul(const CarnotAlgebra& alg, const VecX<S>& x,
                  const VecX<S>& y) {
  if (x.size() != alg.dim() || y.size() != alg.dim())
    throw std::invalid_argument("group_mul: dimension mismatch");
  return VecX<S>(x + y + bch_P(alg, x, y));
}

template <class S>
VecX<S> group_inv(const VecX<S>& x) {
  return -x;
}

/// log_x(y) = log(x^{-1} y), the logarithm centered at x. log_x(x) = 0
/// bitwise (float cancellations in the BCH sum would otherwise leave dust).
template <class S>
VecX<S> log_based(const CarnotAlgebra& alg, const VecX<S>& x,
                  const VecX<S>& y) {
  if (x == y) return VecX<S>::Zero(alg.dim());
  return group_mul<S>(alg, VecX<S>(-x), y);
}

/// Homogeneous quasi-distance |log(x^{-1} y)|; the CC-distance surrogate.
template <class S>
double quasi_distance(const CarnotAlgebra& alg, const VecX<S>& x,
                      const VecX<S>& y) {
  return homogeneous_norm(alg, log_based<S>(alg, x, y));
}

/// Same, computed entirely in the given floating scalar.
template <class S>
S quasi_distance_f(const CarnotAlgebra& alg, const VecX<S>& x,
                   const VecX<S>& y) {
  return homogeneous_norm_f<S>(alg, log_based<S>(alg, x, y));
}

/// Exact 2m!-th power of the quasi-distance, for rational-mode identities.
inline Rat quasi_distance_pow(const CarnotAlgebra& alg, const VecXq& x,
                              const VecXq& y) {
  return homogeneous_norm_pow<Rat>(alg, log_based<Rat>(alg, x, y));
}

/// Derivative of z -> y * z at z = 0: the left-invariant frame at exp(y) in
/// exponential coordinates. Unit determinant (the nonlinear part is strictly
/// layer-raising).
template <class S>
MatX<S> left_frame(const CarnotAlgebra& alg, const VecX<S>& y) {
  const BchTable& table = bch_table(alg.step());
  const int n = alg.dim();
  MatX<S> e = MatX<S>::Identity(n, n);
  for (const BchTerm& t : table.terms) {
    if (std::popcount(t.bits) != 1) continue;
    const int slot = [&] {
      for (int pos = 0; pos < t.len; ++pos)
        if ((t.bits >> pos) & 1u) return pos;
      return -1;
    }();
    for (int col = 0; col < n; ++col) {
      VecX<S> v = VecX<S>::Zero(n);
      if (slot == t.len - 1) {
        v[col] = S(1);
      } else {
        v = y;
      }
      bool dead = false;
      for (int pos = t.len - 2; pos >= 0 && !dead; --pos) {
        VecX<S> w;
        if (pos == slot) {
          w = VecX<S>::Zero(n);
          w[col] = S(1);
          v = bracket<S>(alg, w, v);
        } else {
          v = bracket<S>(alg, y, v);
        }
        dead = vec_is_zero(v);
      }
      if (dead) continue;
      if constexpr (scalar_traits<S>::exact) {
        e.col(col) += v * t.coeff;
      } else {
        e.col(col) += v * t.coeff_d;
      }
    }
  }
  return e;
}

/// Empirical constants of the |P| and bracket bounds over random unit pairs.
struct BchBoundsReport {
  int samples = 0;
  double max_p_ratio = 0.0;
  double max_bracket_ratio = 0.0;
};

BchBoundsReport verify_bch_bounds(const CarnotAlgebra& alg, int samples,
                                  std::mt19937_64& rng);

/// Random point with homogeneous norm 1 (gaussian coordinates, renormalized
/// by a dilation).
VecXd random_unit_vector(const CarnotAlgebra& alg, std::mt19937_64& rng);

}  // namespace carnot
