#include "carnot/maps.hpp"

#include <fstream>

#include "carnot/builtins.hpp"
#include "carnot/io.hpp"

namespace carnot {

SampledMap identity_map(int) {
  SampledMap f;
  f.domain = Domain::all();
  f.eval = [](const VecXd& x) { return x; };
  return f;
}

SampledMap left_translation_map(const CarnotAlgebra& alg, const VecXd& a) {
  SampledMap f;
  f.domain = Domain::all();
  f.eval = [alg, a](const VecXd& x) { return group_mul<double>(alg, a, x); };
  return f;
}

SampledMap dilation_map(const CarnotAlgebra& alg, double r) {
  SampledMap f;
  f.domain = Domain::all();
  f.eval = [alg, r](const VecXd& x) { return dilate<double>(alg, r, x); };
  return f;
}

SampledMap hom_map(const MatXd& phi) {
  SampledMap f;
  f.domain = Domain::all();
  f.eval = [phi](const VecXd& x) { return VecXd(phi * x); };
  return f;
}

SampledMap contact_shear_h1(double lambda) {
  SampledMap f;
  f.domain = Domain::all();
  f.eval = [lambda](const VecXd& x) {
    VecXd y(3);
    y[0] = x[0];
    y[1] = x[1] + lambda * x[0] * x[0];
    y[2] = x[2] + lambda * x[0] * x[0] * x[0] / 6.0;
    return y;
  };
  return f;
}

MatXd contact_shear_h1_differential(double lambda, const VecXd& x) {
  MatXd b(2, 2);
  b << 1.0, 0.0, 2.0 * lambda * x[0], 1.0;
  return b;
}

SampledMap v2_quadratic_h1(const MatXd& a, double eps) {
  SampledMap f;
  f.domain = Domain::all();
  f.eval = [a, eps](const VecXd& x) {
    VecXd y = a * x;
    y[2] += eps * x[2] * x[2];
    return y;
  };
  return f;
}

SampledMap grid_map_from_file(const std::string& path, int domain_dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grid map file '" + path + "'");
  VecXd lo, hi;
  std::vector<int> shape;
  std::vector<VecXd> values;
  int range_dim = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    const auto fail = [&](const std::string& msg) -> IoError {
      return IoError(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    if (toks[0] == "box:") {
      if (static_cast<int>(toks.size()) != 1 + 2 * domain_dim)
        throw fail("box: expects lo/hi per domain axis");
      lo.resize(domain_dim);
      hi.resize(domain_dim);
      for (int i = 0; i < domain_dim; ++i) {
        lo[i] = std::stod(toks[1 + 2 * i]);
        hi[i] = std::stod(toks[2 + 2 * i]);
        if (!(lo[i] < hi[i])) throw fail("box: lo must be below hi");
      }
      continue;
    }
    if (toks[0] == "shape:") {
      for (std::size_t i = 1; i < toks.size(); ++i)
        shape.push_back(std::stoi(toks[i]));
      if (static_cast<int>(shape.size()) != domain_dim)
        throw fail("shape: one entry per domain axis");
      for (int n : shape)
        if (n < 2) throw fail("shape: at least two nodes per axis");
      continue;
    }
    if (lo.size() == 0 || shape.empty())
      throw fail("data rows before box:/shape: headers");
    if (range_dim < 0) range_dim = static_cast<int>(toks.size()) - domain_dim;
    if (static_cast<int>(toks.size()) != domain_dim + range_dim || range_dim < 1)
      throw fail("row width mismatch");
    VecXd y(range_dim);
    for (int i = 0; i < range_dim; ++i)
      y[i] = std::stod(toks[static_cast<std::size_t>(domain_dim + i)]);
    values.push_back(std::move(y));
  }
  long expected = 1;
  for (int n : shape) expected *= n;
  if (static_cast<long>(values.size()) != expected)
    throw IoError(path + ": expected " + std::to_string(expected) +
                  " rows, got " + std::to_string(values.size()));

  SampledMap f;
  f.domain = Domain::box(lo, hi);
  f.eval = [lo, hi, shape, values, domain_dim,
            range_dim](const VecXd& x) {
    // Cell and barycentric coordinates per axis, clamped to the box.
    std::vector<int> cell(static_cast<std::size_t>(domain_dim));
    std::vector<double> frac(static_cast<std::size_t>(domain_dim));
    for (int i = 0; i < domain_dim; ++i) {
      const double t =
          (x[i] - lo[i]) / (hi[i] - lo[i]) * (shape[static_cast<std::size_t>(i)] - 1);
      const double clamped = std::min(
          std::max(t, 0.0),
          static_cast<double>(shape[static_cast<std::size_t>(i)] - 1));
      int c = static_cast<int>(clamped);
      if (c > shape[static_cast<std::size_t>(i)] - 2)
        c = shape[static_cast<std::size_t>(i)] - 2;
      cell[static_cast<std::size_t>(i)] = c;
      frac[static_cast<std::size_t>(i)] = clamped - c;
    }
    VecXd out = VecXd::Zero(range_dim);
    for (int corner = 0; corner < (1 << domain_dim); ++corner) {
      double w = 1.0;
      long index = 0;
      long stride = 1;
      for (int i = 0; i < domain_dim; ++i) {
        const int bit = (corner >> i) & 1;
        w *= bit ? frac[static_cast<std::size_t>(i)]
                 : 1.0 - frac[static_cast<std::size_t>(i)];
        index += stride * (cell[static_cast<std::size_t>(i)] + bit);
        stride *= shape[static_cast<std::size_t>(i)];
      }
      if (w != 0.0) out += w * values[static_cast<std::size_t>(index)];
    }
    return out;
  };
  return f;
}

SampledMap v1_quadratic_h1(const MatXd& qc) {
  if (qc.rows() != 2 || qc.cols() != 3)
    throw std::invalid_argument("v1_quadratic_h1: 2x3 coefficients expected");
  SampledMap f;
  const CarnotAlgebra h1 = heisenberg(1);
  f.domain = Domain::all();
  f.eval = [qc, h1](const VecXd& x) {
    VecXd q = VecXd::Zero(3);
    for (int r = 0; r < 2; ++r)
      q[r] = qc(r, 0) * x[0] * x[0] + qc(r, 1) * x[0] * x[1] +
             qc(r, 2) * x[1] * x[1];
    return group_mul<double>(h1, x, q);
  };
  return f;
}

}  // namespace carnot
