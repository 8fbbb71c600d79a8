#include "carnot/algebra.hpp"

#include <numeric>
#include <set>

#include "carnot/linalg.hpp"

namespace carnot {

CarnotAlgebra::CarnotAlgebra(std::vector<int> layer_dims,
                             std::vector<BracketTerm> brackets)
    : CarnotAlgebra(std::move(layer_dims), std::move(brackets), MatXq()) {}

CarnotAlgebra::CarnotAlgebra(std::vector<int> layer_dims,
                             std::vector<BracketTerm> brackets,
                             MatXq inner_product)
    : layer_dims_(std::move(layer_dims)), triples_(std::move(brackets)) {
  if (layer_dims_.empty())
    throw std::invalid_argument("CarnotAlgebra: no layers");
  for (int d : layer_dims_) {
    if (d <= 0) throw std::invalid_argument("CarnotAlgebra: layer dim <= 0");
  }
  n_ = std::accumulate(layer_dims_.begin(), layer_dims_.end(), 0);
  layer_offsets_.resize(layer_dims_.size());
  int off = 0;
  for (std::size_t j = 0; j < layer_dims_.size(); ++j) {
    layer_offsets_[j] = off;
    off += layer_dims_[j];
  }
  layer_of_.resize(n_);
  for (int j = 1; j <= step(); ++j) {
    for (int a = layer_offset(j); a < layer_offset(j) + layer_dim(j); ++a)
      layer_of_[a] = j;
  }
  homogeneous_dim_ = 0;
  for (std::size_t j = 0; j < layer_dims_.size(); ++j)
    homogeneous_dim_ += static_cast<long>(j + 1) * layer_dims_[j];

  table_.assign(static_cast<std::size_t>(n_) * n_, {});
  table_d_.assign(static_cast<std::size_t>(n_) * n_, {});
  std::set<std::array<int, 3>> seen;
  std::set<std::pair<int, int>> given_pair;
  for (const BracketTerm& t : triples_) {
    if (t.i < 0 || t.j < 0 || t.k < 0 || t.i >= n_ || t.j >= n_ || t.k >= n_)
      throw std::invalid_argument("CarnotAlgebra: bracket index out of range");
    if (t.i == t.j)
      throw std::invalid_argument("CarnotAlgebra: bracket entry with i == j");
    if (!seen.insert({t.i, t.j, t.k}).second)
      throw std::invalid_argument("CarnotAlgebra: duplicate bracket entry");
    given_pair.insert({t.i, t.j});
    if (t.c.is_zero()) continue;
    table_[static_cast<std::size_t>(t.i) * n_ + t.j].emplace_back(t.k, t.c);
  }
  // Fill the antisymmetric counterpart wherever only one order was supplied;
  // explicitly supplied pairs are kept verbatim so validate_algebra can still
  // catch genuine antisymmetry violations.
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (i == j || given_pair.count({j, i}) || !given_pair.count({i, j}))
        continue;
      for (const auto& [k, c] : table_[static_cast<std::size_t>(i) * n_ + j])
        table_[static_cast<std::size_t>(j) * n_ + i].emplace_back(k, -c);
    }
  }
  // Canonical i < j term list, recovered from the table.
  triples_.clear();
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (const auto& [k, c] : table_[static_cast<std::size_t>(i) * n_ + j])
        triples_.push_back({i, j, k, c});
  for (std::size_t p = 0; p < table_.size(); ++p) {
    auto& row = table_[p];
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [k, c] : row)
      table_d_[p].emplace_back(k, c.to_double());
  }

  if (inner_product.size() == 0) {
    inner_ = MatXq::Identity(n_, n_);
    inner_identity_ = true;
  } else {
    if (inner_product.rows() != n_ || inner_product.cols() != n_)
      throw std::invalid_argument("CarnotAlgebra: inner product shape");
    inner_ = std::move(inner_product);
    inner_identity_ = true;
    for (int r = 0; r < n_ && inner_identity_; ++r)
      for (int c = 0; c < n_; ++c)
        if (inner_(r, c) != (r == c ? Rat(1) : Rat(0))) {
          inner_identity_ = false;
          break;
        }
  }
  inner_d_ = to_double(inner_);
}

long factorial(int m) {
  long f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

template <class S>
S homogeneous_norm_pow(const CarnotAlgebra& alg, const VecX<S>& x) {
  const long mfact = factorial(alg.step());
  S acc(0);
  for (int j = 1; j <= alg.step(); ++j) {
    S layer_sq(0);
    if (alg.inner_is_identity()) {
      const auto seg = x.segment(alg.layer_offset(j), alg.layer_dim(j));
      layer_sq = seg.dot(seg);
    } else {
      const VecX<S> pj = project_layer(alg, j, x);
      layer_sq = euclidean_norm_sq(alg, pj);
    }
    if (layer_sq == S(0)) continue;
    // (|pi_j X|^2)^(m!/j); m!/j is a positive integer.
    const long e = mfact / j;
    S term(1);
    S base = layer_sq;
    long n = e;
    while (n > 0) {
      if (n & 1) term *= base;
      base *= base;
      n >>= 1;
    }
    acc += term;
  }
  return acc;
}

template Rat homogeneous_norm_pow<Rat>(const CarnotAlgebra&, const VecXq&);
template double homogeneous_norm_pow<double>(const CarnotAlgebra&,
                                             const VecXd&);

double homogeneous_norm(const CarnotAlgebra& alg, const VecXq& x) {
  return homogeneous_norm_f<double>(alg, to_double(x));
}

bool is_abelian(const CarnotAlgebra& alg) {
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i + 1; j < alg.dim(); ++j)
      if (!alg.bracket_terms(i, j).empty()) return false;
  return true;
}

namespace {

VecXq basis_bracket(const CarnotAlgebra& alg, int i, int j) {
  VecXq out = VecXq::Zero(alg.dim());
  for (const auto& [k, c] : alg.bracket_terms(i, j)) out[k] += c;
  return out;
}

}  // namespace

ValidationReport validate_algebra(const CarnotAlgebra& alg) {
  const int n = alg.dim();
  ValidationReport rep;

  // Inner product: symmetric and positive definite (leading minors).
  const MatXq& g = alg.inner_product();
  for (int r = 0; r < n; ++r) {
    for (int c = r + 1; c < n; ++c) {
      if (g(r, c) != g(c, r)) {
        rep.ok = false;
        rep.axiom = "inner_product_symmetric";
        rep.witness = {r, c, -1};
        rep.message = "inner product is not symmetric";
        return rep;
      }
    }
  }
  if (!alg.inner_is_identity()) {
    for (int k = 1; k <= n; ++k) {
      if (det(g.topLeftCorner(k, k)) <= Rat(0)) {
        rep.ok = false;
        rep.axiom = "inner_product_positive";
        rep.witness = {k - 1, -1, -1};
        rep.message = "inner product is not positive definite";
        return rep;
      }
    }
  }

  // Antisymmetry. The stored table is antisymmetric by construction for the
  // i != j pairs; what can genuinely fail is a user-supplied pair appearing
  // with both orders that do not negate, which the constructor rejects as a
  // duplicate, or an explicit c[i][i] term, which i < j rules out. What is
  // left to verify is that no pair (i, j) received contradictory terms via
  // distinct k entries; recompute [e_i,e_j] + [e_j,e_i] = 0 directly.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const VecXq v = basis_bracket(alg, i, j) + basis_bracket(alg, j, i);
      for (int k = 0; k < n; ++k) {
        if (!v[k].is_zero()) {
          rep.ok = false;
          rep.axiom = "antisymmetry";
          rep.witness = {i, j, k};
          rep.message = "c[i][j][k] != -c[j][i][k]";
          return rep;
        }
      }
    }
  }

  // Grading: [V_a, V_b] lands in V_{a+b} (zero above step m).
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int target = alg.layer_of(i) + alg.layer_of(j);
      for (const auto& [k, c] : alg.bracket_terms(i, j)) {
        if (c.is_zero()) continue;
        if (target > alg.step() || alg.layer_of(k) != target) {
          rep.ok = false;
          rep.axiom = "grading";
          rep.witness = {i, j, k};
          rep.message = "bracket leaves the graded layer";
          return rep;
        }
      }
    }
  }

  // Jacobi identity, exact.
  for (int i = 0; i < n; ++i) {
    VecXq ei = VecXq::Zero(n);
    ei[i] = Rat(1);
    for (int j = i + 1; j < n; ++j) {
      VecXq ej = VecXq::Zero(n);
      ej[j] = Rat(1);
      for (int k = j + 1; k < n; ++k) {
        VecXq ek = VecXq::Zero(n);
        ek[k] = Rat(1);
        const VecXq jac = bracket<Rat>(alg, ei, bracket<Rat>(alg, ej, ek)) +
                          bracket<Rat>(alg, ej, bracket<Rat>(alg, ek, ei)) +
                          bracket<Rat>(alg, ek, bracket<Rat>(alg, ei, ej));
        for (int t = 0; t < n; ++t) {
          if (!jac[t].is_zero()) {
            rep.ok = false;
            rep.axiom = "jacobi";
            rep.witness = {i, j, k};
            rep.message = "Jacobi identity fails";
            return rep;
          }
        }
      }
    }
  }

  // Bracket generation: [V_1, V_j] spans V_{j+1}.
  for (int j = 1; j < alg.step(); ++j) {
    const int rows = alg.layer_dim(j + 1);
    MatXq span(rows, alg.layer_dim(1) * alg.layer_dim(j));
    int col = 0;
    for (int a = alg.layer_offset(1); a < alg.layer_offset(1) + alg.layer_dim(1);
         ++a) {
      for (int b = alg.layer_offset(j); b < alg.layer_offset(j) + alg.layer_dim(j);
           ++b) {
        VecXq v = VecXq::Zero(rows);
        if (a != b) {
          for (const auto& [k, c] : alg.bracket_terms(a, b)) {
            if (alg.layer_of(k) == j + 1) v[k - alg.layer_offset(j + 1)] += c;
          }
        }
        span.col(col++) = v;
      }
    }
    if (rank(span) != rows) {
      rep.ok = false;
      rep.axiom = "bracket_generating";
      rep.witness = {j, -1, -1};
      rep.message = "[V_1, V_j] does not span V_{j+1}";
      return rep;
    }
  }

  return rep;
}

std::optional<MatXq> extend_horizontal_block(const CarnotAlgebra& src,
                                             const CarnotAlgebra& dst,
                                             const MatXq& v1_block) {
  if (v1_block.rows() != dst.layer_dim(1) || v1_block.cols() != src.layer_dim(1))
    throw std::invalid_argument("extend_horizontal_block: block shape");
  if (src.step() > dst.step()) return std::nullopt;
  MatXq phi = MatXq::Zero(dst.dim(), src.dim());
  phi.block(0, 0, dst.layer_dim(1), src.layer_dim(1)) = v1_block;
  for (int j = 2; j <= src.step(); ++j) {
    const int d1 = src.layer_dim(1);
    const int dj1 = src.layer_dim(j - 1);
    const int dj = src.layer_dim(j);
    // Columns of S are [e_a, e_b] in V_j coordinates; T holds the images
    // [phi e_a, phi e_b]. Bracket generation makes S full row rank, so the
    // layer-j block is the unique solution of  block * S = T.
    MatXq s(dj, d1 * dj1);
    MatXq t(dst.layer_dim(j), d1 * dj1);
    int col = 0;
    for (int a = src.layer_offset(1); a < src.layer_offset(1) + d1; ++a) {
      for (int b = src.layer_offset(j - 1); b < src.layer_offset(j - 1) + dj1;
           ++b) {
        VecXq sv = VecXq::Zero(dj);
        for (const auto& [k, c] : src.bracket_terms(a, b))
          sv[k - src.layer_offset(j)] += c;
        s.col(col) = sv;
        const VecXq img =
            bracket<Rat>(dst, VecXq(phi.col(a)), VecXq(phi.col(b)));
        t.col(col) = img.segment(dst.layer_offset(j), dst.layer_dim(j));
        ++col;
      }
    }
    const auto block = solve_exact(s.transpose(), t.transpose());
    if (!block) return std::nullopt;
    phi.block(dst.layer_offset(j), src.layer_offset(j), dst.layer_dim(j), dj) =
        block->transpose();
  }
  if (hom_defect(src, dst, phi) != 0.0) return std::nullopt;
  return phi;
}

ProductDecomposition decompose_product_automorphism(const CarnotAlgebra& alg,
                                                    const GradedHomQ& phi) {
  ProductDecomposition out;
  if (!alg.is_product()) {
    out.error = "algebra is not marked as a direct product";
    return out;
  }
  const auto& factors = alg.factors();
  for (const FactorInfo& f : factors) {
    if (!f.indecomposable_nonabelian) {
      out.error = "factor not marked indecomposable and nonabelian";
      return out;
    }
  }
  const int n = alg.dim();
  if (phi.m.rows() != n || phi.m.cols() != n) {
    out.error = "map shape mismatch";
    return out;
  }
  if (graded_defect(alg, alg, phi.m) != 0.0) {
    out.error = "map is not graded";
    return out;
  }
  if (hom_defect(alg, alg, phi.m) != 0.0) {
    out.error = "map is not a Lie algebra homomorphism";
    return out;
  }
  if (det(phi.m).is_zero()) {
    out.error = "map is not invertible";
    return out;
  }

  const int nf = static_cast<int>(factors.size());
  out.sigma.assign(nf, -1);
  out.factor_maps.resize(nf);
  for (int i = 0; i < nf; ++i) {
    int target = -1;
    for (int j = 0; j < nf; ++j) {
      bool hits = false;
      for (int c : factors[i].global_idx) {
        for (int r : factors[j].global_idx) {
          if (!phi.m(r, c).is_zero()) {
            hits = true;
            break;
          }
        }
        if (hits) break;
      }
      if (!hits) continue;
      if (target >= 0) {
        out.error = "factor image meets two factors; not a product map";
        return out;
      }
      target = j;
    }
    if (target < 0) {
      out.error = "factor maps to zero; not invertible";
      return out;
    }
    out.sigma[i] = target;
  }
  std::vector<bool> hit(nf, false);
  for (int i = 0; i < nf; ++i) {
    if (hit[out.sigma[i]]) {
      out.error = "two factors map into one; not a product map";
      return out;
    }
    hit[out.sigma[i]] = true;
  }
  for (int i = 0; i < nf; ++i) {
    const auto& src = factors[i].global_idx;
    const auto& dst = factors[out.sigma[i]].global_idx;
    MatXq block(static_cast<Eigen::Index>(dst.size()),
                static_cast<Eigen::Index>(src.size()));
    for (std::size_t r = 0; r < dst.size(); ++r)
      for (std::size_t c = 0; c < src.size(); ++c)
        block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            phi.m(dst[r], src[c]);
    out.factor_maps[i] = std::move(block);
  }
  out.ok = true;
  return out;
}

MatXq reassemble_product_automorphism(const CarnotAlgebra& alg,
                                      const ProductDecomposition& dec) {
  if (!dec.ok) throw std::invalid_argument("reassemble: decomposition not ok");
  const auto& factors = alg.factors();
  MatXq m = MatXq::Zero(alg.dim(), alg.dim());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& src = factors[i].global_idx;
    const auto& dst = factors[dec.sigma[i]].global_idx;
    for (std::size_t r = 0; r < dst.size(); ++r)
      for (std::size_t c = 0; c < src.size(); ++c)
        m(dst[r], src[c]) = dec.factor_maps[i](static_cast<Eigen::Index>(r),
                                               static_cast<Eigen::Index>(c));
  }
  return m;
}

Complexified complexify(const CarnotAlgebra& alg) {
  const int n = alg.dim();
  // Basis interleaves (e_k, J e_k) within each layer; the real index of e_k
  // is 2*k relative to its layer block and J e_k sits at 2*k + 1.
  std::vector<int> layer_dims;
  layer_dims.reserve(alg.step());
  for (int j = 1; j <= alg.step(); ++j) layer_dims.push_back(2 * alg.layer_dim(j));

  // With every layer doubled and (e_k, J e_k) interleaved, e_a lands at 2a.
  std::vector<int> re(n), im(n);
  for (int a = 0; a < n; ++a) {
    re[a] = 2 * a;
    im[a] = 2 * a + 1;
  }

  std::vector<BracketTerm> terms;
  auto push = [&terms](int i, int j, int k, const Rat& c) {
    if (i < j) {
      terms.push_back({i, j, k, c});
    } else {
      terms.push_back({j, i, k, -c});
    }
  };
  for (const BracketTerm& t : alg.upper_triples()) {
    // C-bilinear extension of [e_i, e_j] = c e_k.
    push(re[t.i], re[t.j], re[t.k], t.c);
    push(re[t.i], im[t.j], im[t.k], t.c);
    push(im[t.i], re[t.j], im[t.k], t.c);
    push(im[t.i], im[t.j], re[t.k], -t.c);
  }

  MatXq inner = MatXq::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      inner(re[a], re[b]) = alg.inner_product()(a, b);
      inner(im[a], im[b]) = alg.inner_product()(a, b);
    }
  }

  Complexified out{CarnotAlgebra(layer_dims, std::move(terms), std::move(inner)),
                   MatXq::Zero(2 * n, 2 * n)};
  for (int a = 0; a < n; ++a) {
    out.j(im[a], re[a]) = Rat(1);
    out.j(re[a], im[a]) = Rat(-1);
  }
  return out;
}

const char* to_string(JLinearity k) {
  switch (k) {
    case JLinearity::Linear:
      return "J-linear";
    case JLinearity::Antilinear:
      return "J-antilinear";
    default:
      return "neither";
  }
}

JLinearity classify_j_linearity(const CarnotAlgebra& alg_c, const MatXq& j,
                                const MatXq& phi, bool check_hom) {
  const int n = alg_c.dim();
  if (j.rows() != n || j.cols() != n || phi.rows() != n || phi.cols() != n)
    throw std::invalid_argument("classify_j_linearity: shape mismatch");
  if (check_hom && !is_graded_hom(alg_c, alg_c, phi))
    throw std::invalid_argument(
        "classify_j_linearity: map is not a graded homomorphism");
  const MatXq pj = phi * j;
  const MatXq jp = j * phi;
  bool linear = true, antilinear = true;
  for (int r = 0; r < n && (linear || antilinear); ++r) {
    for (int c = 0; c < n; ++c) {
      if (pj(r, c) != jp(r, c)) linear = false;
      if (pj(r, c) != -jp(r, c)) antilinear = false;
      if (!linear && !antilinear) break;
    }
  }
  if (linear) return JLinearity::Linear;
  if (antilinear) return JLinearity::Antilinear;
  return JLinearity::Neither;
}

}  // namespace carnot
