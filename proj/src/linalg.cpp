#include "carnot/linalg.hpp"

#include <stdexcept>

namespace carnot {

std::vector<int> rref_inplace(MatXq& a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pr = -1;
    for (Eigen::Index r = row; r < rows; ++r) {
      if (!a(r, col).is_zero()) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != row) a.row(pr).swap(a.row(row));
    const Rat inv = Rat(1) / a(row, col);
    for (Eigen::Index c = col; c < cols; ++c) a(row, c) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const Rat f = a(r, col);
      for (Eigen::Index c = col; c < cols; ++c) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

int rank(MatXq a) { return static_cast<int>(rref_inplace(a).size()); }

MatXq nullspace(const MatXq& a) {
  MatXq r = a;
  const std::vector<int> pivots = rref_inplace(r);
  const Eigen::Index cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;

  std::vector<int> free_cols;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(static_cast<int>(c));

  MatXq basis = MatXq::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
    const int fc = free_cols[fi];
    basis(fc, static_cast<Eigen::Index>(fi)) = Rat(1);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
      basis(pivots[pi], static_cast<Eigen::Index>(fi)) =
          -r(static_cast<Eigen::Index>(pi), fc);
    }
  }
  return basis;
}

Rat det(MatXq a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det: square only");
  const Eigen::Index n = a.rows();
  Rat d(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pr = -1;
    for (Eigen::Index r = col; r < n; ++r) {
      if (!a(r, col).is_zero()) {
        pr = r;
        break;
      }
    }
    if (pr < 0) return Rat(0);
    if (pr != col) {
      a.row(pr).swap(a.row(col));
      d = -d;
    }
    d *= a(col, col);
    const Rat inv = Rat(1) / a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const Rat f = a(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return d;
}

MatXq inverse(const MatXq& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: square only");
  const Eigen::Index n = a.rows();
  MatXq aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = MatXq::Identity(n, n);
  const std::vector<int> pivots = rref_inplace(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n)
    throw std::invalid_argument("inverse: singular matrix");
  return aug.rightCols(n);
}

VecXq solve(const MatXq& a, const VecXq& b) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw std::invalid_argument("solve: shape mismatch");
  const Eigen::Index n = a.rows();
  MatXq aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  const std::vector<int> pivots = rref_inplace(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n)
    throw std::invalid_argument("solve: singular matrix");
  return aug.col(n);
}

std::optional<MatXq> solve_exact(const MatXq& a, const MatXq& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_exact: shapes");
  const Eigen::Index rows = a.rows();
  const Eigen::Index ca = a.cols();
  const Eigen::Index cb = b.cols();
  MatXq aug(rows, ca + cb);
  aug.leftCols(ca) = a;
  aug.rightCols(cb) = b;
  const std::vector<int> pivots = rref_inplace(aug);
  // Full column rank in the A block, and no pivot may fall in the B block.
  if (static_cast<Eigen::Index>(pivots.size()) != ca) return std::nullopt;
  for (int p : pivots)
    if (p >= ca) return std::nullopt;
  MatXq x(ca, cb);
  for (Eigen::Index r = 0; r < ca; ++r) x.row(r) = aug.block(r, ca, 1, cb);
  return x;
}

}  // namespace carnot
