#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "carnot/algebra.hpp"

namespace carnot {

/// Weighted point set on a group, in exponential coordinates. Stands in for
/// probability measures with finite moments: every formula becomes a finite
/// sum. Weights are positive and sum to one (exactly in rational mode, to
/// 1e-12 in float mode).
template <class S>
struct DiscreteMeasure {
  std::vector<VecX<S>> points;
  std::vector<S> weights;

  std::size_t size() const { return points.size(); }
};

using DiscreteMeasureQ = DiscreteMeasure<Rat>;
using DiscreteMeasureD = DiscreteMeasure<double>;

template <class S>
void validate_measure(const CarnotAlgebra& alg, const DiscreteMeasure<S>& nu) {
  if (nu.points.empty())
    throw std::invalid_argument("measure: empty support");
  if (nu.points.size() != nu.weights.size())
    throw std::invalid_argument("measure: weight/support size mismatch");
  S total(0);
  for (const S& w : nu.weights) {
    if (!(w > S(0))) throw std::invalid_argument("measure: weight <= 0");
    total += w;
  }
  if constexpr (scalar_traits<S>::exact) {
    if (total != S(1))
      throw std::invalid_argument("measure: weights must sum to 1");
  } else {
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("measure: weights must sum to 1 (1e-12)");
  }
  for (const VecX<S>& p : nu.points) {
    if (p.size() != alg.dim())
      throw std::invalid_argument("measure: point dimension mismatch");
  }
}

/// Normalizes weights in place to sum to exactly one.
template <class S>
void normalize_measure(DiscreteMeasure<S>& nu) {
  S total(0);
  for (const S& w : nu.weights) total += w;
  if (!(total > S(0))) throw std::invalid_argument("measure: zero total mass");
  for (S& w : nu.weights) w /= total;
}

template <class S>
DiscreteMeasure<S> map_points(
    const DiscreteMeasure<S>& nu,
    const std::function<VecX<S>(const VecX<S>&)>& fn) {
  DiscreteMeasure<S> out;
  out.weights = nu.weights;
  out.points.reserve(nu.points.size());
  for (const VecX<S>& p : nu.points) out.points.push_back(fn(p));
  return out;
}

/// Merges equal support points, summing their weights (rational mode only;
/// float duplicates are bitwise compares).
template <class S>
DiscreteMeasure<S> merge_duplicates(const DiscreteMeasure<S>& nu) {
  DiscreteMeasure<S> out;
  for (std::size_t i = 0; i < nu.points.size(); ++i) {
    bool merged = false;
    for (std::size_t j = 0; j < out.points.size(); ++j) {
      if (out.points[j] == nu.points[i]) {
        out.weights[j] += nu.weights[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.points.push_back(nu.points[i]);
      out.weights.push_back(nu.weights[i]);
    }
  }
  return out;
}

}  // namespace carnot
