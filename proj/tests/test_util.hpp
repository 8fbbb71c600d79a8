#pragma once

#include <random>

#include "carnot/bch.hpp"
#include "carnot/generators.hpp"
#include "carnot/types.hpp"

namespace carnot::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

inline VecXq basis_vec_q(int n, int i) {
  VecXq v = VecXq::Zero(n);
  v[i] = Rat(1);
  return v;
}

inline VecXd random_vec_d(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> uni(-scale, scale);
  VecXd v(n);
  for (int i = 0; i < n; ++i) v[i] = uni(rng);
  return v;
}

inline double max_abs_diff(const VecXd& a, const VecXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace carnot::testing
