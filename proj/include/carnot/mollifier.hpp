#pragma once

#include <functional>

#include "carnot/barycenter.hpp"

namespace carnot {

/// Evaluation domain in exponential coordinates: a coordinate box or a
/// quasi-ball. Mollification refuses points whose sample ball leaves the
/// domain, so callers must supply margins.
struct Domain {
  enum class Kind { All, Box, QuasiBall };
  Kind kind = Kind::All;
  VecXd lo, hi;        // Box
  VecXd center;        // QuasiBall
  double radius = 0.0;

  static Domain all() { return {}; }
  static Domain box(VecXd lo_, VecXd hi_) {
    Domain d;
    d.kind = Kind::Box;
    d.lo = std::move(lo_);
    d.hi = std::move(hi_);
    return d;
  }
  static Domain quasi_ball(VecXd center_, double radius_) {
    Domain d;
    d.kind = Kind::QuasiBall;
    d.center = std::move(center_);
    d.radius = radius_;
    return d;
  }

  bool contains(const CarnotAlgebra& alg, const VecXd& x) const;
};

/// A map between groups given by an evaluator on exponential coordinates,
/// total on its declared domain. Thread-safe evaluators are the caller's
/// responsibility. The scalar parameter selects the working precision of the
/// whole mollification pipeline.
template <class S>
struct SampledMapT {
  std::function<VecX<S>(const VecX<S>&)> eval;
  Domain domain;

  VecX<S> operator()(const CarnotAlgebra& alg, const VecX<S>& x) const {
    if (!domain.contains(alg, x.template cast<double>()))
      throw std::domain_error("SampledMap: point outside declared domain");
    return eval(x);
  }
};

using SampledMap = SampledMapT<double>;

/// Smooth bump kernel on the unit quasi-ball, discretized on a tensor
/// midpoint grid: profile exp(1/(t^2-1)) of the homogeneous norm, weights
/// normalized to total mass one. The node set is symmetric under inversion
/// and the profile is even, so the discrete measure is exactly
/// reflection-symmetric: group homomorphisms are exact fixed points of the
/// induced mollification.
struct MollKernel {
  MatXd nodes;             // N x Q, strictly inside the unit quasi-ball
  VecXd weights;           // normalized profile weights, sum exactly 1
  VecXd uniform_weights;   // cell volume per node (Haar integral over ball)
  int nodes_per_dim = 0;

  /// Self-consistency tolerance under quadrature refinement for smooth maps.
  static constexpr double kRefinementTol = 1e-4;

  static MollKernel midpoint(const CarnotAlgebra& alg, int nodes_per_dim = 0);
};

/// com-mollification at scale 1: f_1(x) = com(f_*(sigma_x)), with sigma_x the
/// kernel translated to x.
template <class S>
VecX<S> mollify1(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                 const SampledMapT<S>& f, const MollKernel& kernel,
                 const VecX<S>& x) {
  DiscreteMeasure<S> pushed;
  const Eigen::Index q = kernel.nodes.cols();
  pushed.points.reserve(static_cast<std::size_t>(q));
  pushed.weights.reserve(static_cast<std::size_t>(q));
  for (Eigen::Index i = 0; i < q; ++i) {
    const VecX<S> node = kernel.nodes.col(i).template cast<S>();
    pushed.points.push_back(f(src, group_mul<S>(src, x, node)));
    pushed.weights.push_back(static_cast<S>(kernel.weights[i]));
  }
  return com<S>(dst, pushed);
}

/// Scale-rho mollification
///   f_rho = delta_rho o (delta_{1/rho} o f o delta_rho)_1 o delta_{1/rho},
/// evaluated in the algebraically identical direct form
///   f_rho(x) = com{ (w_q, f(x delta_rho q)) }
/// (the outer dilations cancel exactly through com equivariance; evaluating
/// them in floating point would not cancel bitwise).
template <class S>
VecX<S> mollify_at(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                   const SampledMapT<S>& f, const MollKernel& kernel,
                   const VecX<S>& x, S rho) {
  if (!(rho > S(0)))
    throw std::invalid_argument("mollify_at: rho > 0 required");
  DiscreteMeasure<S> pushed;
  const Eigen::Index q = kernel.nodes.cols();
  pushed.points.reserve(static_cast<std::size_t>(q));
  pushed.weights.reserve(static_cast<std::size_t>(q));
  for (Eigen::Index i = 0; i < q; ++i) {
    const VecX<S> node =
        dilate<S>(src, rho, VecX<S>(kernel.nodes.col(i).template cast<S>()));
    pushed.points.push_back(f(src, group_mul<S>(src, x, node)));
    pushed.weights.push_back(static_cast<S>(kernel.weights[i]));
  }
  return com<S>(dst, pushed);
}

/// Quadrature upper bound for the L^p oscillation of f over B(x, rho): the
/// min over candidate centers (sampled values plus the center of mass) of the
/// Haar L^p integral over the ball.
double oscillation(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                   const SampledMap& f, const MollKernel& kernel,
                   const VecXd& x, double rho, double p);

/// Table of d(f_rho(x), f(x)) over the given scales.
std::vector<double> convergence_probe(const CarnotAlgebra& src,
                                      const CarnotAlgebra& dst,
                                      const SampledMap& f,
                                      const MollKernel& kernel, const VecXd& x,
                                      const std::vector<double>& rho_list);

/// Finite-difference derivatives of f_1 in the charts centered at x and
/// f_1(x) (log o left-translation on both sides).
struct DerivativeReport {
  MatXd first;               // N' x N
  double first_norm = 0.0;   // operator norm
  double second_norm = 0.0;  // max column norm of second differences
};

DerivativeReport derivative_bound_probe(const CarnotAlgebra& src,
                                        const CarnotAlgebra& dst,
                                        const SampledMap& f,
                                        const MollKernel& kernel,
                                        const VecXd& x, double fd_step = 1e-3);

}  // namespace carnot
