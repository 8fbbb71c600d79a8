#pragma once

#include "carnot/exterior.hpp"
#include "carnot/mollifier.hpp"

namespace carnot {

/// Pansu differential at a base point: a graded homomorphism between the
/// algebras, together with the residual of the estimation that produced it.
struct PansuDifferential {
  enum class Provenance { Analytic, RescaledEstimate };

  VecXd base;
  GradedHomD map;
  double residual = 0.0;
  Provenance provenance = Provenance::Analytic;
};

/// The rescaled map f_{x,r} = delta_{1/r} o l_{f(x)^{-1}} o f o l_x o delta_r.
/// Fixes the identity: f_{x,r}(e) = e exactly.
SampledMap rescaled_map(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                        const SampledMap& f, const VecXd& x, double r);

/// Pansu differential of a smooth map from horizontal finite differences of
/// the abelianization, extended to the higher layers as a graded
/// homomorphism (least squares over the bracket relations). Returns
/// std::nullopt when the extension defect exceeds `tol`, signalling a
/// non-contact point or a bad step size.
std::optional<PansuDifferential> pansu_differential_analytic(
    const CarnotAlgebra& src, const CarnotAlgebra& dst, const SampledMap& f,
    const VecXd& x, double h = 1e-4, double tol = 1e-6);

/// Scalar coefficient with an optional Euclidean gradient, used for forms
/// with non-constant coefficients.
struct ScalarField {
  std::function<double(const VecXd&)> value;
  std::function<VecXd(const VecXd&)> gradient;  // optional

  static ScalarField constant(double c) {
    return {[c](const VecXd&) { return c; }, [c](const VecXd& y) {
              return VecXd(VecXd::Zero(y.size()));
            }};
  }
};

/// Finite sum of (scalar field) x (left-invariant template) terms: the
/// continuous-coefficient forms of the experiments.
struct CoefficientForm {
  struct Term {
    ScalarField a;
    GradedFormD form;
  };
  int degree = 0;
  std::vector<Term> terms;

  static CoefficientForm left_invariant(const GradedFormD& form,
                                        double scale = 1.0) {
    CoefficientForm w;
    w.degree = form.degree;
    w.terms.push_back({ScalarField::constant(scale), form});
    return w;
  }
  static CoefficientForm scaled(const ScalarField& a, const GradedFormD& form) {
    CoefficientForm w;
    w.degree = form.degree;
    w.terms.push_back({a, form});
    return w;
  }

  GradedFormD eval(const CarnotAlgebra& alg_dst, const VecXd& y) const;
};

/// Exterior differential of a coefficient form: d(a alpha) = sum_i
/// (X_i a) theta_i ^ alpha + a d(alpha), with X_i the left-invariant frame
/// (the coefficient gradients must be present).
CoefficientForm d_coefficient_form(const CarnotAlgebra& alg,
                                   const CoefficientForm& w);

/// Pansu pullback value at x: a(f(x)) times the pullback of the template
/// through D_Pf(x); identically zero when D_Pf(x) = 0 (the quasiregular null
/// convention).
GradedFormD pansu_pullback(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                           const PansuDifferential& dp,
                           const CoefficientForm& omega, const VecXd& y);

/// Distortion data of a Pansu differential: the operator norm of the
/// horizontal block, the product of the layer-block determinants, and
/// K = |D_h|^nu / det (infinite when det <= 0).
struct DistortionReport {
  double horizontal_norm = 0.0;
  double det = 0.0;
  double k = 0.0;
  bool finite = false;
};

DistortionReport distortion(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                            const PansuDifferential& dp);

/// L^p grid distances between f_{x,r} and the graded-hom candidate, over a
/// fixed box grid inside the unit ball; one entry per r.
std::vector<double> pansu_convergence_probe(const CarnotAlgebra& src,
                                            const CarnotAlgebra& dst,
                                            const SampledMap& f, const VecXd& x,
                                            const GradedHomD& candidate,
                                            const std::vector<double>& r_list,
                                            double p,
                                            int grid_per_dim = 5);

/// Least-squares decay exponent of a positive table against the scales.
double fitted_decay_exponent(const std::vector<double>& scales,
                             const std::vector<double>& values);

}  // namespace carnot
