#pragma once

#include <Eigen/Dense>

#include "carnot/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<carnot::Rat> : GenericNumTraits<carnot::Rat> {
  typedef carnot::Rat Real;
  typedef carnot::Rat NonInteger;
  typedef carnot::Rat Nested;
  typedef carnot::Rat Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
  static Real epsilon() { return carnot::Rat(0); }
  static Real dummy_precision() { return carnot::Rat(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace carnot {

template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using VecXd = VecX<double>;
using MatXd = MatX<double>;
using VecXq = VecX<Rat>;
using MatXq = MatX<Rat>;

inline VecXd to_double(const VecXq& v) {
  VecXd r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = v[i].to_double();
  return r;
}

inline MatXd to_double(const MatXq& m) {
  MatXd r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_double();
  return r;
}

inline const VecXd& to_double(const VecXd& v) { return v; }
inline const MatXd& to_double(const MatXd& m) { return m; }

template <class S>
VecX<S> cast_vec(const VecXq& v) {
  VecX<S> r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = rat_to<S>(v[i]);
  return r;
}

template <class S>
MatX<S> cast_mat(const MatXq& m) {
  MatX<S> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = rat_to<S>(m(i, j));
  return r;
}

}  // namespace carnot
