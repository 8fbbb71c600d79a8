#include "carnot/pansu.hpp"

#include <cmath>

namespace carnot {

SampledMap rescaled_map(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                        const SampledMap& f, const VecXd& x, double r) {
  if (!(r > 0)) throw std::invalid_argument("rescaled_map: r > 0 required");
  const VecXd fx = f(src, x);
  SampledMap out;
  out.domain = Domain::all();  // the inner evaluation checks f's domain
  out.eval = [src, dst, f, x, fx, r](const VecXd& q) {
    const VecXd arg = group_mul<double>(src, x, dilate<double>(src, r, q));
    return dilate<double>(dst, 1.0 / r, log_based<double>(dst, fx, f(src, arg)));
  };
  return out;
}

std::optional<PansuDifferential> pansu_differential_analytic(
    const CarnotAlgebra& src, const CarnotAlgebra& dst, const SampledMap& f,
    const VecXd& x, double h, double tol) {
  const int d1 = src.layer_dim(1);
  const int d1p = dst.layer_dim(1);

  // Horizontal block from central differences of the abelianized map
  // pi_1' o log o f along horizontal one-parameter subgroups.
  MatXd v1(d1p, d1);
  for (int j = 0; j < d1; ++j) {
    VecXd dir = VecXd::Zero(src.dim());
    dir[src.layer_offset(1) + j] = h;
    const VecXd plus = f(src, group_mul<double>(src, x, dir));
    const VecXd minus = f(src, group_mul<double>(src, x, VecXd(-dir)));
    v1.col(j) =
        (plus.head(d1p) - minus.head(d1p)) / (2 * h);
  }

  PansuDifferential dp;
  dp.base = x;
  dp.provenance = PansuDifferential::Provenance::Analytic;
  dp.map.m = MatXd::Zero(dst.dim(), src.dim());
  dp.map.m.block(0, 0, d1p, d1) = v1;

  // Layer-by-layer extension: the block on V_j solves  block * S = T with
  // S the [e_a, e_b] coordinates and T the images [phi e_a, phi e_b].
  double residual = 0.0;
  for (int j = 2; j <= src.step(); ++j) {
    if (j > dst.step()) {
      // Image must vanish: any nonzero bracket of images is a defect.
      for (int a = 0; a < d1; ++a) {
        for (int b = 0; b < src.layer_dim(j - 1); ++b) {
          const VecXd img = bracket<double>(
              dst, VecXd(dp.map.m.col(src.layer_offset(1) + a)),
              VecXd(dp.map.m.col(src.layer_offset(j - 1) + b)));
          residual = std::max(residual, img.cwiseAbs().maxCoeff());
        }
      }
      continue;
    }
    const int dj = src.layer_dim(j);
    const int djp = dst.layer_dim(j);
    const int cols = d1 * src.layer_dim(j - 1);
    MatXd s(dj, cols), t(djp, cols);
    int col = 0;
    for (int a = src.layer_offset(1); a < src.layer_offset(1) + d1; ++a) {
      for (int b = src.layer_offset(j - 1);
           b < src.layer_offset(j - 1) + src.layer_dim(j - 1); ++b) {
        VecXd sv = VecXd::Zero(dj);
        for (const auto& [k, c] : src.bracket_terms_d(a, b))
          sv[k - src.layer_offset(j)] += c;
        s.col(col) = sv;
        const VecXd img = bracket<double>(dst, VecXd(dp.map.m.col(a)),
                                          VecXd(dp.map.m.col(b)));
        t.col(col) = img.segment(dst.layer_offset(j), djp);
        ++col;
      }
    }
    const MatXd block =
        s.transpose().colPivHouseholderQr().solve(t.transpose()).transpose();
    residual = std::max(residual, (block * s - t).cwiseAbs().maxCoeff());
    dp.map.m.block(dst.layer_offset(j), src.layer_offset(j), djp, dj) = block;
  }
  // The layer solves measure solvability; the full homomorphism defect also
  // covers bracket relations past the source step (images must vanish).
  residual = std::max(residual, hom_defect(src, dst, dp.map.m));
  dp.residual = residual;
  if (residual > tol) return std::nullopt;
  return dp;
}

GradedFormD CoefficientForm::eval(const CarnotAlgebra& alg_dst,
                                  const VecXd& y) const {
  GradedFormD out = zero_form<double>(alg_dst, degree);
  for (const Term& t : terms) out.coeff += t.a.value(y) * t.form.coeff;
  return out;
}

CoefficientForm d_coefficient_form(const CarnotAlgebra& alg,
                                   const CoefficientForm& w) {
  CoefficientForm out;
  out.degree = w.degree + 1;
  for (const auto& term : w.terms) {
    if (!term.a.gradient)
      throw std::invalid_argument(
          "d_coefficient_form: coefficient gradient required");
    // (X_i a) theta_i ^ alpha, with X_i a = grad(a) . (left frame column i).
    for (int i = 0; i < alg.dim(); ++i) {
      const GradedFormD ti_form =
          wedge<double>(alg, basis_covector<double>(alg, {i}), term.form);
      if (ti_form.is_zero()) continue;
      ScalarField xi_a;
      xi_a.value = [&alg, i, grad = term.a.gradient](const VecXd& y) {
        const MatXd frame = left_frame<double>(alg, y);
        return grad(y).dot(frame.col(i));
      };
      out.terms.push_back({std::move(xi_a), ti_form});
    }
    const GradedFormD dform = ce_differential<double>(alg, term.form);
    if (!dform.is_zero()) out.terms.push_back({term.a, dform});
  }
  return out;
}

GradedFormD pansu_pullback(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                           const PansuDifferential& dp,
                           const CoefficientForm& omega, const VecXd& y) {
  if (dp.map.m.cwiseAbs().maxCoeff() == 0.0)
    return zero_form<double>(src, omega.degree);
  const GradedFormD at_y = omega.eval(dst, y);
  return pullback_linear<double>(src, dst, dp.map.m, at_y);
}

DistortionReport distortion(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                            const PansuDifferential& dp) {
  DistortionReport rep;
  const MatXd v1 =
      dp.map.m.block(0, 0, dst.layer_dim(1), src.layer_dim(1));
  // Operator norm w.r.t. the inner products; diagonal matrices short-circuit
  // so dilations come out exact.
  bool diagonal = v1.rows() == v1.cols();
  if (diagonal) {
    for (int r = 0; r < v1.rows() && diagonal; ++r)
      for (int c = 0; c < v1.cols(); ++c)
        if (r != c && v1(r, c) != 0.0) {
          diagonal = false;
          break;
        }
  }
  if (diagonal && src.inner_is_identity() && dst.inner_is_identity()) {
    rep.horizontal_norm = v1.cwiseAbs().diagonal().maxCoeff();
  } else {
    MatXd m = v1;
    if (!dst.inner_is_identity() || !src.inner_is_identity()) {
      const MatXd gd = dst.inner_product_d()
                           .topLeftCorner(dst.layer_dim(1), dst.layer_dim(1))
                           .llt()
                           .matrixL();
      const MatXd gs = src.inner_product_d()
                           .topLeftCorner(src.layer_dim(1), src.layer_dim(1))
                           .llt()
                           .matrixL();
      m = gd.transpose() * v1 * gs.transpose().inverse();
    }
    Eigen::JacobiSVD<MatXd> svd(m);
    rep.horizontal_norm =
        svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  }

  rep.det = 1.0;
  if (src.layer_dims() != dst.layer_dims()) {
    rep.det = 0.0;
  } else {
    for (int j = 1; j <= src.step(); ++j) {
      const MatXd block = dp.map.m.block(dst.layer_offset(j),
                                         src.layer_offset(j), dst.layer_dim(j),
                                         src.layer_dim(j));
      if (block.rows() == 1) {
        rep.det *= block(0, 0);
      } else {
        rep.det *= block.determinant();
      }
    }
  }

  if (rep.det > 0.0) {
    rep.k = std::pow(rep.horizontal_norm,
                     static_cast<double>(src.homogeneous_dim())) /
            rep.det;
    rep.finite = true;
  } else {
    rep.k = std::numeric_limits<double>::infinity();
    rep.finite = false;
  }
  return rep;
}

std::vector<double> pansu_convergence_probe(const CarnotAlgebra& src,
                                            const CarnotAlgebra& dst,
                                            const SampledMap& f, const VecXd& x,
                                            const GradedHomD& candidate,
                                            const std::vector<double>& r_list,
                                            double p, int grid_per_dim) {
  const int n = src.dim();
  // Fixed tensor grid over the unit coordinate box clipped to the unit ball.
  std::vector<VecXd> grid;
  std::vector<int> idx(n, 0);
  for (;;) {
    VecXd q(n);
    for (int i = 0; i < n; ++i)
      q[i] = (2.0 * idx[i] + 1.0 - grid_per_dim) / grid_per_dim;
    if (homogeneous_norm(src, q) < 1.0) grid.push_back(q);
    int pos = 0;
    while (pos < n && ++idx[pos] == grid_per_dim) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  const double cellvol = std::pow(2.0 / grid_per_dim, n);

  std::vector<double> out;
  out.reserve(r_list.size());
  for (double r : r_list) {
    const SampledMap fr = rescaled_map(src, dst, f, x, r);
    double acc = 0.0;
    for (const VecXd& q : grid) {
      const double d =
          quasi_distance<double>(dst, fr.eval(q), VecXd(candidate.m * q));
      acc += cellvol * std::pow(d, p);
    }
    out.push_back(std::pow(acc, 1.0 / p));
  }
  return out;
}

double fitted_decay_exponent(const std::vector<double>& scales,
                             const std::vector<double>& values) {
  // Least squares slope of log(value) against log(scale); positive slope
  // means decay as the scale shrinks.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(values[i] > 0.0)) continue;
    const double lx = std::log(scales[i]);
    const double ly = std::log(values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::infinity();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace carnot
