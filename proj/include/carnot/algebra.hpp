#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carnot/types.hpp"

namespace carnot {

/// One nonzero structure constant: [e_i, e_j] contains c * e_k.
/// Indices are 0-based over the fixed layer-ordered basis.
struct BracketTerm {
  int i = 0, j = 0, k = 0;
  Rat c;
};

/// Metadata for one factor of a direct-product algebra. `global_idx` lists
/// the product-basis indices belonging to the factor, layer by layer.
struct FactorInfo {
  std::vector<int> global_idx;
  std::vector<int> layer_dims;
  bool indecomposable_nonabelian = false;
};

/// A stratified (Carnot) Lie algebra over a fixed graded basis. The basis is
/// ordered layer by layer, so layer projections are coordinate slices.
/// Structure constants are exact rationals; a double mirror is kept for
/// float-mode evaluation. Immutable after construction.
class CarnotAlgebra {
 public:
  /// `brackets` lists [e_i, e_j] = sum c e_k for i < j only; antisymmetric
  /// counterparts are filled in automatically. Shape errors throw
  /// std::invalid_argument; Lie-algebra axioms are checked separately by
  /// validate_algebra.
  CarnotAlgebra(std::vector<int> layer_dims, std::vector<BracketTerm> brackets);
  CarnotAlgebra(std::vector<int> layer_dims, std::vector<BracketTerm> brackets,
                MatXq inner_product);

  int dim() const { return n_; }
  int step() const { return static_cast<int>(layer_dims_.size()); }
  long homogeneous_dim() const { return homogeneous_dim_; }

  /// Layers are 1-based, matching the grading V_1 ... V_m.
  int layer_dim(int j) const { return layer_dims_[j - 1]; }
  int layer_offset(int j) const { return layer_offsets_[j - 1]; }
  const std::vector<int>& layer_dims() const { return layer_dims_; }
  /// Layer of the a-th basis vector (0-based index, 1-based layer).
  int layer_of(int a) const { return layer_of_[a]; }

  const MatXq& inner_product() const { return inner_; }
  const MatXd& inner_product_d() const { return inner_d_; }
  bool inner_is_identity() const { return inner_identity_; }

  /// Nonzero terms of [e_i, e_j], both orders present.
  const std::vector<std::pair<int, Rat>>& bracket_terms(int i, int j) const {
    return table_[static_cast<std::size_t>(i) * n_ + j];
  }
  const std::vector<std::pair<int, double>>& bracket_terms_d(int i,
                                                             int j) const {
    return table_d_[static_cast<std::size_t>(i) * n_ + j];
  }

  /// The i < j entries as given (used by file output and tests).
  const std::vector<BracketTerm>& upper_triples() const { return triples_; }

  bool is_product() const { return factors_.size() >= 2; }
  const std::vector<FactorInfo>& factors() const { return factors_; }
  void set_factors(std::vector<FactorInfo> f) { factors_ = std::move(f); }

 private:
  int n_ = 0;
  std::vector<int> layer_dims_;
  std::vector<int> layer_offsets_;
  std::vector<int> layer_of_;
  long homogeneous_dim_ = 0;
  std::vector<BracketTerm> triples_;
  std::vector<std::vector<std::pair<int, Rat>>> table_;
  std::vector<std::vector<std::pair<int, double>>> table_d_;
  MatXq inner_;
  MatXd inner_d_;
  bool inner_identity_ = true;
  std::vector<FactorInfo> factors_;
};

long factorial(int m);

namespace detail {

/// Structure constants as seen from scalar mode S: exact rationals for Rat,
/// the double mirror for any floating scalar.
template <class S>
inline const auto& bracket_row(const CarnotAlgebra& alg, int i, int j) {
  if constexpr (scalar_traits<S>::exact) {
    return alg.bracket_terms(i, j);
  } else {
    return alg.bracket_terms_d(i, j);
  }
}

}  // namespace detail

template <class S>
VecX<S> bracket(const CarnotAlgebra& alg, const VecX<S>& x, const VecX<S>& y) {
  const int n = alg.dim();
  if (x.size() != n || y.size() != n)
    throw std::invalid_argument("bracket: dimension mismatch");
  VecX<S> out = VecX<S>::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (x[i] == S(0)) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j] == S(0)) continue;
      for (const auto& [k, c] : detail::bracket_row<S>(alg, i, j)) {
        out[k] += x[i] * y[j] * c;
      }
    }
  }
  return out;
}

template <class S>
VecX<S> project_layer(const CarnotAlgebra& alg, int j, const VecX<S>& x) {
  if (j < 1 || j > alg.step())
    throw std::invalid_argument("project_layer: layer out of range");
  VecX<S> out = VecX<S>::Zero(alg.dim());
  out.segment(alg.layer_offset(j), alg.layer_dim(j)) =
      x.segment(alg.layer_offset(j), alg.layer_dim(j));
  return out;
}

/// delta_r scales the layer-j slice by r^j.
template <class S>
VecX<S> dilate(const CarnotAlgebra& alg, const S& r, const VecX<S>& x) {
  if (!(r > S(0))) throw std::invalid_argument("dilate: r must be positive");
  VecX<S> out(x.size());
  S f = r;
  for (int j = 1; j <= alg.step(); ++j) {
    out.segment(alg.layer_offset(j), alg.layer_dim(j)) =
        x.segment(alg.layer_offset(j), alg.layer_dim(j)) * f;
    if (j < alg.step()) f *= r;
  }
  return out;
}

template <class S>
S euclidean_norm_sq(const CarnotAlgebra& alg, const VecX<S>& x) {
  if (alg.inner_is_identity()) return x.dot(x);
  if constexpr (scalar_traits<S>::exact) {
    return x.dot(alg.inner_product() * x);
  } else {
    return x.dot(alg.inner_product_d().template cast<S>() * x);
  }
}

template <class S>
double euclidean_norm(const CarnotAlgebra& alg, const VecX<S>& x) {
  return std::sqrt(to_double(euclidean_norm_sq(alg, x)));
}

/// 2m!-th power of the homogeneous norm, exact over rationals:
/// sum_i (|pi_i X|_e^2)^(m!/i). Used wherever exact scaling identities are
/// asserted without taking roots.
template <class S>
S homogeneous_norm_pow(const CarnotAlgebra& alg, const VecX<S>& x);

/// Homogeneous norm for floating scalars. Evaluated scale-invariantly
/// (largest layer magnitude factored out) so the 2m!-th powers neither
/// overflow nor underflow.
template <class S>
S homogeneous_norm_f(const CarnotAlgebra& alg, const VecX<S>& x) {
  const int m = alg.step();
  S s(0);
  std::vector<S> layer_norm(static_cast<std::size_t>(m) + 1, S(0));
  for (int j = 1; j <= m; ++j) {
    const VecX<S> pj = project_layer<S>(alg, j, x);
    const S nj = std::sqrt(euclidean_norm_sq<S>(alg, pj));
    layer_norm[static_cast<std::size_t>(j)] = nj;
    if (nj > S(0)) s = std::max(s, std::pow(nj, S(1) / S(j)));
  }
  if (s == S(0)) return S(0);
  const S exp2m = S(2) * S(static_cast<double>(factorial(m)));
  S acc(0);
  for (int j = 1; j <= m; ++j) {
    const S nj = layer_norm[static_cast<std::size_t>(j)];
    if (nj == S(0)) continue;
    const S ratio = nj / std::pow(s, S(j));  // <= 1
    acc += std::pow(ratio, exp2m / S(j));
  }
  return s * std::pow(acc, S(1) / exp2m);
}

inline double homogeneous_norm(const CarnotAlgebra& alg, const VecXd& x) {
  return homogeneous_norm_f<double>(alg, x);
}
double homogeneous_norm(const CarnotAlgebra& alg, const VecXq& x);

/// Validation report for the Carnot axioms. `ok` is false on the first
/// violated axiom; `axiom` names it and `witness` holds basis indices
/// (0-based, -1 where unused).
struct ValidationReport {
  bool ok = true;
  std::string axiom;
  std::array<int, 3> witness = {-1, -1, -1};
  std::string message;
};

ValidationReport validate_algebra(const CarnotAlgebra& alg);

bool is_abelian(const CarnotAlgebra& alg);

/// Layer-preserving linear map between two Carnot algebras; doubles as the
/// Pansu differential. The matrix maps source coordinates to target
/// coordinates.
template <class S>
struct GradedHom {
  MatX<S> m;

  VecX<S> operator()(const VecX<S>& x) const { return m * x; }
};

using GradedHomQ = GradedHom<Rat>;
using GradedHomD = GradedHom<double>;

template <class S>
GradedHom<S> identity_hom(const CarnotAlgebra& alg) {
  return {MatX<S>::Identity(alg.dim(), alg.dim())};
}

template <class S>
GradedHom<S> dilation_hom(const CarnotAlgebra& alg, const S& r) {
  MatX<S> m = MatX<S>::Zero(alg.dim(), alg.dim());
  S f = r;
  for (int j = 1; j <= alg.step(); ++j) {
    for (int a = alg.layer_offset(j); a < alg.layer_offset(j) + alg.layer_dim(j);
         ++a)
      m(a, a) = f;
    if (j < alg.step()) f *= r;
  }
  return {std::move(m)};
}

template <class S>
GradedHom<S> compose(const GradedHom<S>& f, const GradedHom<S>& g) {
  return {f.m * g.m};
}

/// Largest |entry| outside the diagonal V_i -> V'_i blocks (0 iff graded).
template <class S>
double graded_defect(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                     const MatX<S>& m) {
  if (m.rows() != dst.dim() || m.cols() != src.dim())
    throw std::invalid_argument("graded_defect: shape mismatch");
  double worst = 0.0;
  for (int c = 0; c < src.dim(); ++c) {
    for (int r = 0; r < dst.dim(); ++r) {
      if (dst.layer_of(r) == src.layer_of(c)) continue;
      worst = std::max(worst, std::abs(to_double(m(r, c))));
    }
  }
  return worst;
}

/// Largest |Phi[e_i,e_j] - [Phi e_i, Phi e_j]| entry over basis pairs.
template <class S>
double hom_defect(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                  const MatX<S>& m) {
  if (m.rows() != dst.dim() || m.cols() != src.dim())
    throw std::invalid_argument("hom_defect: shape mismatch");
  double worst = 0.0;
  for (int i = 0; i < src.dim(); ++i) {
    for (int j = i + 1; j < src.dim(); ++j) {
      VecX<S> lhs = VecX<S>::Zero(dst.dim());
      for (const auto& [k, c] : detail::bracket_row<S>(src, i, j))
        lhs += m.col(k) * c;
      VecX<S> rhs = bracket<S>(dst, VecX<S>(m.col(i)), VecX<S>(m.col(j)));
      for (int r = 0; r < dst.dim(); ++r)
        worst = std::max(worst, std::abs(to_double(lhs[r] - rhs[r])));
    }
  }
  return worst;
}

template <class S>
bool is_graded_hom(const CarnotAlgebra& src, const CarnotAlgebra& dst,
                   const MatX<S>& m, double tol = 0.0) {
  return graded_defect(src, dst, m) <= tol && hom_defect(src, dst, m) <= tol;
}

/// Unique graded-homomorphism extension of a horizontal block V_1 -> V'_1,
/// when one exists (bracket generation pins every higher layer). Returns
/// std::nullopt when the block is incompatible with the bracket relations.
std::optional<MatXq> extend_horizontal_block(const CarnotAlgebra& src,
                                             const CarnotAlgebra& dst,
                                             const MatXq& v1_block);

/// Result of splitting a graded automorphism of a direct product into a
/// factor permutation and per-factor isomorphisms. Graded isomorphisms
/// between products of indecomposable nonabelian factors are always of this
/// shape; when the input violates those hypotheses, `ok` is false and
/// `error` says why.
struct ProductDecomposition {
  bool ok = false;
  std::string error;
  std::vector<int> sigma;        // factor i of the source maps into sigma[i]
  std::vector<MatXq> factor_maps;
};

ProductDecomposition decompose_product_automorphism(const CarnotAlgebra& alg,
                                                    const GradedHomQ& phi);

/// Reassembles the block matrix from a decomposition (inverse of the above).
MatXq reassemble_product_automorphism(const CarnotAlgebra& alg,
                                      const ProductDecomposition& dec);

/// Complexification: real dimension doubles, layers interleave (e_k, J e_k).
struct Complexified {
  CarnotAlgebra alg;
  MatXq j;  // the complex structure, J^2 = -id
};

Complexified complexify(const CarnotAlgebra& alg);

enum class JLinearity { Linear, Antilinear, Neither };

const char* to_string(JLinearity k);

/// Compares phi J with +-J phi exactly. `check_hom` may be disabled to probe
/// plain linear maps.
JLinearity classify_j_linearity(const CarnotAlgebra& alg_c, const MatXq& j,
                                const MatXq& phi, bool check_hom = true);

}  // namespace carnot
