#pragma once

#include <string>

#include "carnot/mollifier.hpp"

namespace carnot {

SampledMap identity_map(int n);
SampledMap left_translation_map(const CarnotAlgebra& alg, const VecXd& a);
SampledMap dilation_map(const CarnotAlgebra& alg, double r);

/// exp o phi o log for a Lie algebra homomorphism matrix: the associated
/// group homomorphism (in exponential coordinates, just the linear map).
SampledMap hom_map(const MatXd& phi);

/// Contact shear of H_1: (x, y, z) -> (x, y + l x^2, z + l x^3 / 6).
/// A strict contactomorphism (pulls the contact form back to itself) whose
/// Pansu differential varies with the base point.
SampledMap contact_shear_h1(double lambda);

/// Horizontal block of the Pansu differential of the contact shear at x.
MatXd contact_shear_h1_differential(double lambda, const VecXd& x);

/// exp o (A + eps z^2 e_3) o log on H_1 with A a graded-hom matrix and z the
/// vertical coordinate; a vertical perturbation that rescales away at the
/// identity.
SampledMap v2_quadratic_h1(const MatXd& a, double eps);

/// x -> x exp(q(x)) with q the V_1-valued quadratic with coefficient rows
/// qc (2 x 3: each row gives a x^2 + b xy + c y^2) on H_1.
SampledMap v1_quadratic_h1(const MatXd& qc);

/// Map tabulated on a regular lattice over a box, evaluated by multilinear
/// interpolation; the declared domain is the box. File format:
///   box: lo_1 hi_1 ... lo_N hi_N
///   shape: n_1 ... n_N                  (lattice nodes per axis, >= 2)
///   <rows "x_1 .. x_N y_1 .. y_N'">     (row-major, first axis fastest)
SampledMap grid_map_from_file(const std::string& path, int domain_dim);

}  // namespace carnot
