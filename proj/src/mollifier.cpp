#include "carnot/mollifier.hpp"

#include <cmath>

namespace carnot {

bool Domain::contains(const CarnotAlgebra& alg, const VecXd& x) const {
  switch (kind) {
    case Kind::All:
      return true;
    case Kind::Box:
      for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
      return true;
    case Kind::QuasiBall:
      return quasi_distance<double>(alg, center, x) <= radius;
  }
  return false;
}

MollKernel MollKernel::midpoint(const CarnotAlgebra& alg, int nodes_per_dim) {
  const int n = alg.dim();
  if (nodes_per_dim <= 0) nodes_per_dim = n <= 4 ? 9 : 5;
  const double cell = 2.0 / nodes_per_dim;
  const double cell_vol = std::pow(cell, n);

  std::vector<VecXd> kept;
  std::vector<double> profile;
  std::vector<int> idx(n, 0);
  for (;;) {
    VecXd x(n);
    // (2i + 1 - n) / n is bitwise odd under i -> n-1-i, so the node set is
    // exactly symmetric under inversion.
    for (int i = 0; i < n; ++i)
      x[i] = (2.0 * idx[i] + 1.0 - nodes_per_dim) / nodes_per_dim;
    const double t = homogeneous_norm(alg, x);
    if (t < 1.0) {
      const double w = std::exp(1.0 / (t * t - 1.0));
      if (w > 0.0) {
        kept.push_back(x);
        profile.push_back(w);
      }
    }
    int pos = 0;
    while (pos < n && ++idx[pos] == nodes_per_dim) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }

  MollKernel k;
  k.nodes_per_dim = nodes_per_dim;
  k.nodes.resize(n, static_cast<Eigen::Index>(kept.size()));
  k.weights.resize(static_cast<Eigen::Index>(kept.size()));
  k.uniform_weights.resize(static_cast<Eigen::Index>(kept.size()));
  double total = 0.0;
  for (double w : profile) total += w;
  for (std::size_t q = 0; q < kept.size(); ++q) {
    k.nodes.col(static_cast<Eigen::Index>(q)) = kept[q];
    k.weights[static_cast<Eigen::Index>(q)] = profile[q] / total;
    k.uniform_weights[static_cast<Eigen::Index>(q)] = cell_vol;
  }
  return k;
}

double oscillation(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                   const SampledMap& f, const MollKernel& kernel,
                   const VecXd& x, double rho, double p) {
  if (!(rho > 0) || !(p > 0))
    throw std::invalid_argument("oscillation: rho > 0 and p > 0 required");
  const Eigen::Index q = kernel.nodes.cols();
  std::vector<VecXd> values;
  values.reserve(static_cast<std::size_t>(q));
  DiscreteMeasureD pushed;
  for (Eigen::Index i = 0; i < q; ++i) {
    const VecXd y = group_mul<double>(
        src, x, dilate<double>(src, rho, VecXd(kernel.nodes.col(i))));
    values.push_back(f(src, y));
    pushed.points.push_back(values.back());
    pushed.weights.push_back(kernel.weights[i]);
  }
  std::vector<VecXd> candidates = values;
  candidates.push_back(com<double>(dst, pushed));

  const double jac = std::pow(rho, static_cast<double>(src.homogeneous_dim()));
  double best = std::numeric_limits<double>::infinity();
  for (const VecXd& a : candidates) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < q; ++i) {
      acc += kernel.uniform_weights[i] *
             std::pow(quasi_distance<double>(
                          dst, values[static_cast<std::size_t>(i)], a),
                      p);
    }
    best = std::min(best, jac * acc);
  }
  return std::pow(best, 1.0 / p);
}

std::vector<double> convergence_probe(const CarnotAlgebra& src,
                                      const CarnotAlgebra& dst,
                                      const SampledMap& f,
                                      const MollKernel& kernel, const VecXd& x,
                                      const std::vector<double>& rho_list) {
  std::vector<double> out;
  const VecXd fx = f(src, x);
  out.reserve(rho_list.size());
  for (double rho : rho_list)
    out.push_back(quasi_distance<double>(
        dst, mollify_at<double>(src, dst, f, kernel, x, rho), fx));
  return out;
}

DerivativeReport derivative_bound_probe(const CarnotAlgebra& src,
                                        const CarnotAlgebra& dst,
                                        const SampledMap& f,
                                        const MollKernel& kernel,
                                        const VecXd& x, double fd_step) {
  const int n = src.dim();
  const int np = dst.dim();
  const VecXd f1x = mollify1<double>(src, dst, f, kernel, x);
  // g = log o l_{f_1(x)^{-1}} o f_1 o l_x o exp, differentiated at 0.
  auto g = [&](const VecXd& v) {
    const VecXd y =
        mollify1<double>(src, dst, f, kernel, group_mul<double>(src, x, v));
    return log_based<double>(dst, f1x, y);
  };
  DerivativeReport rep;
  rep.first.resize(np, n);
  const double h = fd_step;
  std::vector<VecXd> plus(static_cast<std::size_t>(n)),
      minus(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    VecXd dv = VecXd::Zero(n);
    dv[j] = h;
    plus[static_cast<std::size_t>(j)] = g(dv);
    minus[static_cast<std::size_t>(j)] = g(VecXd(-dv));
    rep.first.col(j) =
        (plus[static_cast<std::size_t>(j)] - minus[static_cast<std::size_t>(j)]) /
        (2 * h);
  }
  Eigen::JacobiSVD<MatXd> svd(rep.first);
  rep.first_norm = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;

  const VecXd g0 = g(VecXd::Zero(n));
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const VecXd second =
        (plus[static_cast<std::size_t>(j)] - 2 * g0 +
         minus[static_cast<std::size_t>(j)]) /
        (h * h);
    worst = std::max(worst, second.norm());
  }
  rep.second_norm = worst;
  return rep;
}

}  // namespace carnot
