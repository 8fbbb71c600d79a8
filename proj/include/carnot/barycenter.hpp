#pragma once

#include "carnot/bch.hpp"
#include "carnot/measure.hpp"

namespace carnot {

namespace detail {

/// Pairwise tree reduction; fixed order makes float sums bit-reproducible
/// and is harmless in exact mode.
template <class S>
VecX<S> pairwise_sum(std::vector<VecX<S>>& terms, int n) {
  if (terms.empty()) return VecX<S>::Zero(n);
  std::size_t count = terms.size();
  while (count > 1) {
    std::size_t half = count / 2;
    for (std::size_t i = 0; i < half; ++i)
      terms[i] = terms[2 * i] + terms[2 * i + 1];
    if (count % 2) {
      terms[half] = terms[count - 1];
      ++half;
    }
    count = half;
  }
  return terms[0];
}

}  // namespace detail

/// p-th moment about `base`: sum_k w_k d(base, x_k)^p.
template <class S>
double moment(const CarnotAlgebra& alg, const DiscreteMeasure<S>& nu, double p,
              const VecX<S>& base) {
  if (!(p > 0)) throw std::invalid_argument("moment: p > 0 required");
  std::vector<VecXd> terms;
  terms.reserve(nu.size());
  for (std::size_t k = 0; k < nu.size(); ++k) {
    const double d = quasi_distance<S>(alg, base, nu.points[k]);
    VecXd t(1);
    t[0] = to_double(nu.weights[k]) * std::pow(d, p);
    terms.push_back(t);
  }
  return detail::pairwise_sum(terms, 1)[0];
}

/// The balance map C_nu at x: integral of log_x against the measure,
///   C_nu(exp X) = -X + sum_k w_k (Y_k + P(-X, Y_k)).
/// Polynomial of degree <= m-1 in X.
template <class S>
VecX<S> c_map(const CarnotAlgebra& alg, const DiscreteMeasure<S>& nu,
              const VecX<S>& x) {
  if (nu.points.empty())
    throw std::invalid_argument("c_map: empty measure");
  const VecX<S> neg_x = -x;
  std::vector<VecX<S>> terms;
  terms.reserve(nu.size());
  for (std::size_t k = 0; k < nu.size(); ++k) {
    terms.push_back(VecX<S>(
        (nu.points[k] + bch_P<S>(alg, neg_x, nu.points[k])) * nu.weights[k]));
  }
  return VecX<S>(detail::pairwise_sum(terms, alg.dim()) - x);
}

/// Center of mass: the unique zero of C_nu, solved layer by layer. The i-th
/// layer of P(-X, Y) only involves layers < i of X, so each pass pins one
/// layer exactly; no iteration is involved.
template <class S>
VecX<S> com(const CarnotAlgebra& alg, const DiscreteMeasure<S>& nu) {
  if (nu.points.empty())
    throw std::invalid_argument("com: empty measure");
  // Point masses (possibly split across equal support points) are their own
  // center, bit for bit.
  bool all_equal = true;
  for (std::size_t k = 1; k < nu.size() && all_equal; ++k)
    all_equal = (nu.points[k] == nu.points[0]);
  if (all_equal) return nu.points[0];

  // Total mass in working precision: float-mode weights may sum to 1 only up
  // to their own rounding, and the balance equation needs the exact mass.
  S total(0);
  {
    std::vector<VecX<S>> wv;
    wv.reserve(nu.size());
    for (const S& w : nu.weights) {
      VecX<S> t(1);
      t[0] = w;
      wv.push_back(std::move(t));
    }
    total = detail::pairwise_sum(wv, 1)[0];
  }

  VecX<S> xbar = VecX<S>::Zero(alg.dim());
  for (int layer = 1; layer <= alg.step(); ++layer) {
    const VecX<S> neg = -xbar;
    std::vector<VecX<S>> terms;
    terms.reserve(nu.size());
    for (std::size_t k = 0; k < nu.size(); ++k) {
      const VecX<S> inner =
          layer == 1 ? nu.points[k]
                     : VecX<S>(nu.points[k] + bch_P<S>(alg, neg, nu.points[k]));
      terms.push_back(VecX<S>(inner * nu.weights[k]));
    }
    const VecX<S> sum = detail::pairwise_sum(terms, alg.dim());
    xbar.segment(alg.layer_offset(layer), alg.layer_dim(layer)) =
        sum.segment(alg.layer_offset(layer), alg.layer_dim(layer)) / total;
  }
  return xbar;
}

/// Residuals of the center-of-mass equivariance laws: translation by z,
/// inversion, and push-forward through a graded homomorphism phi into
/// `dst`. Residuals are quasi-distances between the two sides; all three
/// vanish identically in exact arithmetic.
struct EquivarianceReport {
  double translation = 0.0;
  double inversion = 0.0;
  double homomorphism = 0.0;

  double max_residual() const {
    return std::max(translation, std::max(inversion, homomorphism));
  }
};

template <class S>
EquivarianceReport verify_equivariance(const CarnotAlgebra& alg,
                                       const DiscreteMeasure<S>& nu,
                                       const VecX<S>& z,
                                       const CarnotAlgebra& dst,
                                       const GradedHom<S>& phi) {
  EquivarianceReport rep;
  const VecX<S> center = com(alg, nu);

  DiscreteMeasure<S> translated = map_points<S>(
      nu, [&](const VecX<S>& p) { return group_mul<S>(alg, z, p); });
  rep.translation = quasi_distance<S>(alg, com(alg, translated),
                                      group_mul<S>(alg, z, center));

  DiscreteMeasure<S> inverted =
      map_points<S>(nu, [&](const VecX<S>& p) { return VecX<S>(-p); });
  rep.inversion =
      quasi_distance<S>(alg, com(alg, inverted), VecX<S>(-center));

  DiscreteMeasure<S> pushed =
      map_points<S>(nu, [&](const VecX<S>& p) { return VecX<S>(phi.m * p); });
  rep.homomorphism =
      quasi_distance<S>(dst, com(dst, pushed), VecX<S>(phi.m * center));
  return rep;
}

/// Evaluated polynomial moments of the measure: the per-layer linear means
/// and, per BCH term and per layer assignment of its letters, the moment of
/// the corresponding multilinear form in Y with the X-slots frozen at
/// -log(com). Each value carries the a-priori bound constant so callers can
/// assert |A| <= C (1 + m-th moment).
struct MomentSet {
  std::vector<VecXd> layer_means;
  std::vector<double> values;   // |A_{w,L}|_e
  std::vector<double> bounds;   // C_{w,L}
  double moment_m = 0.0;

  static MomentSet compute(const CarnotAlgebra& alg,
                           const DiscreteMeasure<double>& nu);

  bool all_finite() const;
  /// max over entries of |A| - C (1 + moment_m); <= 0 when the bound holds.
  double max_bound_violation() const;
};

/// Frobenius-type upper bound B with |[u,v]|_e <= B |u|_e |v|_e.
double bracket_norm_bound(const CarnotAlgebra& alg);

}  // namespace carnot
