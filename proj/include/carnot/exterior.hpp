#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "carnot/algebra.hpp"

namespace carnot {

/// Basis bookkeeping for Lambda^k of an n-dimensional space: basis covectors
/// are strictly increasing index tuples, stored as bitmasks, ordered
/// lexicographically. Shared and thread-safe.
class ExteriorBasis {
 public:
  static const ExteriorBasis& get(int n);

  int n() const { return n_; }
  long dim(int k) const {
    return (k < 0 || k > n_) ? 0 : static_cast<long>(masks_[k].size());
  }
  std::uint32_t mask_of(int k, long rank) const { return masks_[k][rank]; }
  long rank_of(std::uint32_t mask) const { return rank_of_mask_[mask]; }
  const std::vector<std::uint32_t>& masks(int k) const { return masks_[k]; }

 private:
  explicit ExteriorBasis(int n);
  int n_;
  std::vector<std::vector<std::uint32_t>> masks_;  // per degree, lex order
  std::vector<long> rank_of_mask_;
};

/// Sign of merging two disjoint increasing tuples (theta_A wedge theta_B);
/// 0 when they overlap.
int wedge_sign(std::uint32_t a, std::uint32_t b);

/// Left-invariant exterior form with coefficients over the basis covectors
/// of degree `degree`. Weight bookkeeping comes from the algebra grading:
/// the covector dual to a layer-i vector has weight -i.
template <class S>
struct GradedForm {
  int n = 0;
  int degree = 0;
  VecX<S> coeff;

  bool is_zero() const {
    for (Eigen::Index i = 0; i < coeff.size(); ++i)
      if (!(coeff[i] == S(0))) return false;
    return true;
  }
};

using GradedFormQ = GradedForm<Rat>;
using GradedFormD = GradedForm<double>;

template <class S>
GradedForm<S> zero_form(const CarnotAlgebra& alg, int degree) {
  GradedForm<S> f;
  f.n = alg.dim();
  f.degree = degree;
  f.coeff = VecX<S>::Zero(ExteriorBasis::get(alg.dim()).dim(degree));
  return f;
}

/// theta_{i_1} ^ ... ^ theta_{i_k} for strictly increasing 0-based indices.
template <class S>
GradedForm<S> basis_covector(const CarnotAlgebra& alg,
                             const std::vector<int>& idx) {
  GradedForm<S> f = zero_form<S>(alg, static_cast<int>(idx.size()));
  std::uint32_t mask = 0;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (idx[t] < 0 || idx[t] >= alg.dim() ||
        (t > 0 && idx[t] <= idx[t - 1]))
      throw std::invalid_argument("basis_covector: bad index tuple");
    mask |= 1u << idx[t];
  }
  f.coeff[ExteriorBasis::get(alg.dim()).rank_of(mask)] = S(1);
  return f;
}

template <class S>
GradedForm<S> vol_form(const CarnotAlgebra& alg) {
  GradedForm<S> f = zero_form<S>(alg, alg.dim());
  f.coeff[0] = S(1);
  return f;
}

/// Weight of one basis covector: minus the sum of its index layers.
int covector_weight(const CarnotAlgebra& alg, std::uint32_t mask);

template <class S>
GradedForm<S> wedge(const CarnotAlgebra& alg, const GradedForm<S>& a,
                    const GradedForm<S>& b) {
  if (a.n != alg.dim() || b.n != alg.dim())
    throw std::invalid_argument("wedge: algebra mismatch");
  GradedForm<S> out = zero_form<S>(alg, a.degree + b.degree);
  if (a.degree + b.degree > alg.dim()) return out;  // zero form past top degree
  const ExteriorBasis& basis = ExteriorBasis::get(alg.dim());
  for (long ra = 0; ra < basis.dim(a.degree); ++ra) {
    if (a.coeff[ra] == S(0)) continue;
    const std::uint32_t ma = basis.mask_of(a.degree, ra);
    for (long rb = 0; rb < basis.dim(b.degree); ++rb) {
      if (b.coeff[rb] == S(0)) continue;
      const std::uint32_t mb = basis.mask_of(b.degree, rb);
      const int sign = wedge_sign(ma, mb);
      if (sign == 0) continue;
      out.coeff[basis.rank_of(ma | mb)] += a.coeff[ra] * b.coeff[rb] * S(sign);
    }
  }
  return out;
}

/// Interior product with a vector (contraction in the first slot).
template <class S>
GradedForm<S> interior_product(const CarnotAlgebra& alg, const VecX<S>& x,
                               const GradedForm<S>& a) {
  if (a.degree == 0) return zero_form<S>(alg, 0);
  GradedForm<S> out = zero_form<S>(alg, a.degree - 1);
  const ExteriorBasis& basis = ExteriorBasis::get(alg.dim());
  for (long r = 0; r < basis.dim(a.degree); ++r) {
    if (a.coeff[r] == S(0)) continue;
    const std::uint32_t mask = basis.mask_of(a.degree, r);
    int pos = 0;
    for (int i = 0; i < alg.dim(); ++i) {
      if (!((mask >> i) & 1u)) continue;
      if (!(x[i] == S(0))) {
        const S sgn = (pos % 2 == 0) ? S(1) : S(-1);
        out.coeff[basis.rank_of(mask & ~(1u << i))] += a.coeff[r] * x[i] * sgn;
      }
      ++pos;
    }
  }
  return out;
}

/// Chevalley-Eilenberg differential on left-invariant forms, extended as an
/// antiderivation from d theta_k = -sum_{a<b} c^k_{ab} theta_a ^ theta_b.
/// The signs follow the standard alternating-sum convention; d o d = 0.
template <class S>
GradedForm<S> ce_differential(const CarnotAlgebra& alg,
                              const GradedForm<S>& a) {
  GradedForm<S> out = zero_form<S>(alg, a.degree + 1);
  if (a.degree + 1 > alg.dim()) return out;
  const ExteriorBasis& basis = ExteriorBasis::get(alg.dim());
  for (long r = 0; r < basis.dim(a.degree); ++r) {
    if (a.coeff[r] == S(0)) continue;
    const std::uint32_t mask = basis.mask_of(a.degree, r);
    int pos = 0;
    for (int t = 0; t < alg.dim(); ++t) {
      if (!((mask >> t) & 1u)) continue;
      const S outer = (pos % 2 == 0) ? a.coeff[r] : S(-a.coeff[r]);
      const std::uint32_t rest = mask & ~(1u << t);
      // d theta_t lands on pairs (i, j) with [e_i, e_j] hitting e_t.
      for (int i = 0; i < alg.dim(); ++i) {
        for (int j = i + 1; j < alg.dim(); ++j) {
          for (const auto& [k, c] : detail::bracket_row<S>(alg, i, j)) {
            if (k != t) continue;
            const std::uint32_t pair = (1u << i) | (1u << j);
            const int sign = wedge_sign(pair, rest);
            if (sign == 0) continue;
            out.coeff[basis.rank_of(pair | rest)] += outer * c * S(-sign);
          }
        }
      }
      ++pos;
    }
  }
  return out;
}

/// Weight-homogeneous components, as (weight, component) sorted by weight;
/// zero forms give the empty list.
template <class S>
std::vector<std::pair<int, GradedForm<S>>> weight_split(
    const CarnotAlgebra& alg, const GradedForm<S>& a) {
  const ExteriorBasis& basis = ExteriorBasis::get(alg.dim());
  std::map<int, GradedForm<S>> comps;
  for (long r = 0; r < basis.dim(a.degree); ++r) {
    if (a.coeff[r] == S(0)) continue;
    const int w = covector_weight(alg, basis.mask_of(a.degree, r));
    auto it = comps.find(w);
    if (it == comps.end())
      it = comps.emplace(w, zero_form<S>(alg, a.degree)).first;
    it->second.coeff[r] = a.coeff[r];
  }
  return {comps.begin(), comps.end()};
}

/// Pullback of a form on the target through a plain linear map (matrix maps
/// source coordinates to target coordinates): minor-determinant expansion.
template <class S>
GradedForm<S> pullback_linear(const CarnotAlgebra& src,
                              const CarnotAlgebra& dst, const MatX<S>& m,
                              const GradedForm<S>& a);

/// Pullback through a graded homomorphism (linear, wedge-multiplicative,
/// weight-preserving on homogeneous forms).
template <class S>
GradedForm<S> pullback_hom(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                           const GradedHom<S>& phi, const GradedForm<S>& a) {
  return pullback_linear<S>(src, dst, phi.m, a);
}

/// Basis data of the Rumin-type ideals in one degree: I^k (differential ideal
/// generated by vertical one-forms), its annihilator J^k, quotient
/// representatives for Lambda^k / I^k, and wedge-dual bases when the quotient
/// is nonzero.
struct FormIdealBasis {
  int degree = 0;
  std::vector<GradedFormQ> i_basis;
  std::vector<GradedFormQ> j_basis;
  std::vector<GradedFormQ> quotient_reps;
  std::vector<GradedFormQ> dual_gamma;  // in J^{N-k}: rep_i ^ gamma_j = d_ij vol
};

std::vector<GradedFormQ> ideal_I(const CarnotAlgebra& alg, int k);
std::vector<GradedFormQ> ideal_J(const CarnotAlgebra& alg, int k);
FormIdealBasis duality_pairing(const CarnotAlgebra& alg, int k);

/// Kernel element of the bracket map Lambda^2 V_1 -> V_2 on the step-2
/// quotient, as (i, j, coefficient) triples; std::nullopt when the map is
/// injective ("free").
std::optional<std::vector<std::tuple<int, int, Rat>>> free_step2_obstruction(
    const CarnotAlgebra& alg);

/// The pullback test forms of the product-rigidity arguments, on one factor:
/// the closed codegree-one family i_Y vol for Y in the horizontal basis, and
/// (for non-free factors) horizontal representatives of Lambda^2 / I^2 with
/// their wedge-dual basis in J^{N-2}.
struct RigidityForms {
  std::vector<GradedFormQ> codegree1;
  bool has_two_forms = false;
  std::vector<GradedFormQ> two_forms;
  std::vector<GradedFormQ> two_form_duals;
};

RigidityForms rigidity_test_forms(const CarnotAlgebra& alg);

/// Lifts a form on one product factor to the product algebra through the
/// factor projection (indices re-routed through FactorInfo).
template <class S>
GradedForm<S> lift_factor_form(const CarnotAlgebra& prod, int factor,
                               const GradedForm<S>& a) {
  const auto& info = prod.factors().at(static_cast<std::size_t>(factor));
  const ExteriorBasis& fb = ExteriorBasis::get(a.n);
  GradedForm<S> out = zero_form<S>(prod, a.degree);
  const ExteriorBasis& pb = ExteriorBasis::get(prod.dim());
  for (long r = 0; r < fb.dim(a.degree); ++r) {
    if (a.coeff[r] == S(0)) continue;
    const std::uint32_t mask = fb.mask_of(a.degree, r);
    std::uint32_t lifted = 0;
    for (int i = 0; i < a.n; ++i)
      if ((mask >> i) & 1u)
        lifted |= 1u << info.global_idx[static_cast<std::size_t>(i)];
    out.coeff[pb.rank_of(lifted)] = a.coeff[r];
  }
  return out;
}

inline GradedFormD to_double(const GradedFormQ& f) {
  GradedFormD out;
  out.n = f.n;
  out.degree = f.degree;
  out.coeff = to_double(f.coeff);
  return out;
}

}  // namespace carnot
