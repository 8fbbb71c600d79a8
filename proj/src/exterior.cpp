#include "carnot/exterior.hpp"

#include <bit>
#include <mutex>

#include "carnot/linalg.hpp"

namespace carnot {

ExteriorBasis::ExteriorBasis(int n) : n_(n) {
  if (n < 0 || n > 20)
    throw std::invalid_argument("ExteriorBasis: dimension out of range");
  masks_.resize(n + 1);
  rank_of_mask_.assign(std::size_t(1) << n, -1);
  // Enumerating masks in increasing numeric order lists each degree's tuples
  // in colexicographic order; sort keys are reversed tuples, which is still a
  // fixed deterministic order. Re-sort per degree into lexicographic tuple
  // order for readability of printed bases.
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    masks_[std::popcount(mask)].push_back(mask);
  for (int k = 0; k <= n; ++k) {
    std::sort(masks_[k].begin(), masks_[k].end(),
              [](std::uint32_t a, std::uint32_t b) {
                // Lexicographic on the increasing index tuples.
                while (a && b) {
                  const int ia = std::countr_zero(a);
                  const int ib = std::countr_zero(b);
                  if (ia != ib) return ia < ib;
                  a &= a - 1;
                  b &= b - 1;
                }
                return a < b;
              });
    for (std::size_t r = 0; r < masks_[k].size(); ++r)
      rank_of_mask_[masks_[k][r]] = static_cast<long>(r);
  }
}

const ExteriorBasis& ExteriorBasis::get(int n) {
  static std::map<int, ExteriorBasis> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, ExteriorBasis(n)).first;
  return it->second;
}

int wedge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int swaps = 0;
  for (std::uint32_t bb = b; bb; bb &= bb - 1) {
    const int i = std::countr_zero(bb);
    // theta_i must move left past every a-factor with a larger index.
    swaps += std::popcount(a >> (i + 1));
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

int covector_weight(const CarnotAlgebra& alg, std::uint32_t mask) {
  int w = 0;
  for (std::uint32_t m = mask; m; m &= m - 1)
    w -= alg.layer_of(std::countr_zero(m));
  return w;
}

namespace {

template <class S>
S minor_det(const MatX<S>& m, const std::vector<int>& rows,
            const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  MatX<S> sub(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) sub(r, c) = m(rows[r], cols[c]);
  if constexpr (scalar_traits<S>::exact) {
    return det(sub);
  } else {
    if (k == 0) return S(1);
    return sub.determinant();
  }
}

std::vector<int> mask_to_tuple(std::uint32_t mask) {
  std::vector<int> out;
  for (std::uint32_t m = mask; m; m &= m - 1)
    out.push_back(std::countr_zero(m));
  return out;
}

/// Deterministic row-reduced basis of the span of the given forms.
std::vector<GradedFormQ> reduced_span(const CarnotAlgebra& alg, int degree,
                                      const std::vector<GradedFormQ>& span) {
  const long cols = ExteriorBasis::get(alg.dim()).dim(degree);
  MatXq rows(static_cast<Eigen::Index>(span.size()), cols);
  for (std::size_t i = 0; i < span.size(); ++i)
    rows.row(static_cast<Eigen::Index>(i)) = span[i].coeff.transpose();
  const std::vector<int> pivots = rref_inplace(rows);
  std::vector<GradedFormQ> basis;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    GradedFormQ f = zero_form<Rat>(alg, degree);
    f.coeff = rows.row(static_cast<Eigen::Index>(i)).transpose();
    basis.push_back(std::move(f));
  }
  return basis;
}

std::vector<int> vertical_indices(const CarnotAlgebra& alg) {
  std::vector<int> out;
  for (int i = 0; i < alg.dim(); ++i)
    if (alg.layer_of(i) >= 2) out.push_back(i);
  return out;
}

}  // namespace

template <class S>
GradedForm<S> pullback_linear(const CarnotAlgebra& src,
                              const CarnotAlgebra& dst, const MatX<S>& m,
                              const GradedForm<S>& a) {
  if (m.rows() != dst.dim() || m.cols() != src.dim() || a.n != dst.dim())
    throw std::invalid_argument("pullback_linear: algebra mismatch");
  GradedForm<S> out = zero_form<S>(src, a.degree);
  if (a.degree > src.dim()) return out;
  const ExteriorBasis& db = ExteriorBasis::get(dst.dim());
  const ExteriorBasis& sb = ExteriorBasis::get(src.dim());
  for (long rt = 0; rt < db.dim(a.degree); ++rt) {
    if (a.coeff[rt] == S(0)) continue;
    const std::vector<int> rows = mask_to_tuple(db.mask_of(a.degree, rt));
    for (long rs = 0; rs < sb.dim(a.degree); ++rs) {
      const std::vector<int> cols = mask_to_tuple(sb.mask_of(a.degree, rs));
      const S d = minor_det(m, rows, cols);
      if (d == S(0)) continue;
      out.coeff[rs] += a.coeff[rt] * d;
    }
  }
  return out;
}

template GradedForm<Rat> pullback_linear<Rat>(const CarnotAlgebra&,
                                              const CarnotAlgebra&,
                                              const MatXq&,
                                              const GradedForm<Rat>&);
template GradedForm<double> pullback_linear<double>(const CarnotAlgebra&,
                                                    const CarnotAlgebra&,
                                                    const MatXd&,
                                                    const GradedForm<double>&);

std::vector<GradedFormQ> ideal_I(const CarnotAlgebra& alg, int k) {
  if (k < 0 || k > alg.dim())
    throw std::invalid_argument("ideal_I: degree out of range");
  const ExteriorBasis& basis = ExteriorBasis::get(alg.dim());
  std::vector<GradedFormQ> span;
  const std::vector<int> vertical = vertical_indices(alg);
  // alpha ^ tau, tau a vertical covector.
  if (k >= 1) {
    for (long r = 0; r < basis.dim(k - 1); ++r) {
      GradedFormQ alpha = zero_form<Rat>(alg, k - 1);
      alpha.coeff[r] = Rat(1);
      for (int v : vertical)
        span.push_back(wedge<Rat>(alg, alpha, basis_covector<Rat>(alg, {v})));
    }
  }
  // beta ^ d eta, eta a vertical covector.
  if (k >= 2) {
    std::vector<GradedFormQ> deta;
    for (int v : vertical)
      deta.push_back(ce_differential<Rat>(alg, basis_covector<Rat>(alg, {v})));
    for (long r = 0; r < basis.dim(k - 2); ++r) {
      GradedFormQ beta = zero_form<Rat>(alg, k - 2);
      beta.coeff[r] = Rat(1);
      for (const GradedFormQ& d : deta)
        span.push_back(wedge<Rat>(alg, beta, d));
    }
  }
  return reduced_span(alg, k, span);
}

std::vector<GradedFormQ> ideal_J(const CarnotAlgebra& alg, int k) {
  if (k < 0 || k > alg.dim())
    throw std::invalid_argument("ideal_J: degree out of range");
  const int n = alg.dim();
  const ExteriorBasis& basis = ExteriorBasis::get(n);
  const std::vector<GradedFormQ> complement = ideal_I(alg, n - k);
  // alpha in J^k iff alpha ^ beta = 0 for every beta in I^{n-k}
  // (prop: the annihilator meets each degree through the complementary one).
  MatXq constraints(static_cast<Eigen::Index>(complement.size()),
                    basis.dim(k));
  for (std::size_t row = 0; row < complement.size(); ++row) {
    for (long r = 0; r < basis.dim(k); ++r) {
      GradedFormQ unit = zero_form<Rat>(alg, k);
      unit.coeff[r] = Rat(1);
      const GradedFormQ w = wedge<Rat>(alg, unit, complement[row]);
      constraints(static_cast<Eigen::Index>(row), r) =
          w.coeff.size() > 0 ? w.coeff[0] : Rat(0);
    }
  }
  MatXq kernel = constraints.rows() == 0
                     ? MatXq::Identity(basis.dim(k), basis.dim(k))
                     : nullspace(constraints);
  std::vector<GradedFormQ> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    GradedFormQ f = zero_form<Rat>(alg, k);
    f.coeff = kernel.col(c);
    out.push_back(std::move(f));
  }
  return out;
}

FormIdealBasis duality_pairing(const CarnotAlgebra& alg, int k) {
  FormIdealBasis out;
  out.degree = k;
  out.i_basis = ideal_I(alg, k);
  out.j_basis = ideal_J(alg, k);
  const ExteriorBasis& basis = ExteriorBasis::get(alg.dim());
  const long dim_k = basis.dim(k);

  // Quotient representatives: the basis covectors away from the pivot
  // columns of the reduced I^k basis (deterministic in the fixed monomial
  // order).
  std::vector<bool> is_pivot(static_cast<std::size_t>(dim_k), false);
  {
    MatXq rows(static_cast<Eigen::Index>(out.i_basis.size()), dim_k);
    for (std::size_t i = 0; i < out.i_basis.size(); ++i)
      rows.row(static_cast<Eigen::Index>(i)) = out.i_basis[i].coeff.transpose();
    for (int p : rref_inplace(rows)) is_pivot[static_cast<std::size_t>(p)] = true;
  }
  for (long r = 0; r < dim_k; ++r) {
    if (is_pivot[static_cast<std::size_t>(r)]) continue;
    GradedFormQ f = zero_form<Rat>(alg, k);
    f.coeff[r] = Rat(1);
    out.quotient_reps.push_back(std::move(f));
  }

  const std::vector<GradedFormQ> j_comp = ideal_J(alg, alg.dim() - k);
  if (out.quotient_reps.empty()) return out;  // I^k = Lambda^k

  // Nondegenerate pairing: rep_i ^ gamma_j = delta_ij vol.
  const std::size_t q = out.quotient_reps.size();
  if (j_comp.size() != q)
    throw std::logic_error("duality_pairing: dimension mismatch against J");
  MatXq pairing(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      pairing(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          wedge<Rat>(alg, out.quotient_reps[i], j_comp[j]).coeff[0];
  const MatXq inv = inverse(pairing);
  for (std::size_t j = 0; j < q; ++j) {
    GradedFormQ g = zero_form<Rat>(alg, alg.dim() - k);
    for (std::size_t l = 0; l < q; ++l)
      g.coeff += j_comp[l].coeff * inv(static_cast<Eigen::Index>(l),
                                       static_cast<Eigen::Index>(j));
    out.dual_gamma.push_back(std::move(g));
  }
  return out;
}

namespace {

/// Bracket map Lambda^2 V_1 -> V_2 as a matrix; columns indexed by pairs
/// (a, b), a < b, in lexicographic order.
std::pair<MatXq, std::vector<std::pair<int, int>>> horizontal_bracket_matrix(
    const CarnotAlgebra& alg) {
  const int d1 = alg.layer_dim(1);
  const int d2 = alg.layer_dim(2);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < d1; ++a)
    for (int b = a + 1; b < d1; ++b) pairs.emplace_back(a, b);
  MatXq m = MatXq::Zero(d2, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t col = 0; col < pairs.size(); ++col) {
    for (const auto& [k, c] :
         alg.bracket_terms(pairs[col].first, pairs[col].second)) {
      if (alg.layer_of(k) == 2)
        m(k - alg.layer_offset(2), static_cast<Eigen::Index>(col)) += c;
    }
  }
  return {std::move(m), std::move(pairs)};
}

}  // namespace

std::optional<std::vector<std::tuple<int, int, Rat>>> free_step2_obstruction(
    const CarnotAlgebra& alg) {
  if (alg.step() < 2)
    throw std::invalid_argument("free_step2_obstruction: step >= 2 required");
  const auto [m, pairs] = horizontal_bracket_matrix(alg);
  const MatXq kernel = nullspace(m);
  if (kernel.cols() == 0) return std::nullopt;
  std::vector<std::tuple<int, int, Rat>> out;
  for (std::size_t col = 0; col < pairs.size(); ++col) {
    const Rat& c = kernel(static_cast<Eigen::Index>(col), 0);
    if (!c.is_zero())
      out.emplace_back(pairs[col].first, pairs[col].second, c);
  }
  return out;
}

RigidityForms rigidity_test_forms(const CarnotAlgebra& alg) {
  RigidityForms out;
  const GradedFormQ vol = vol_form<Rat>(alg);
  for (int a = alg.layer_offset(1); a < alg.layer_offset(1) + alg.layer_dim(1);
       ++a) {
    VecXq y = VecXq::Zero(alg.dim());
    y[a] = Rat(1);
    out.codegree1.push_back(interior_product<Rat>(alg, y, vol));
  }

  const auto [bracket_m, pairs] = horizontal_bracket_matrix(alg);
  const MatXq kernel = nullspace(bracket_m);
  if (kernel.cols() == 0) return out;  // free: two-form family unavailable
  out.has_two_forms = true;

  // Horizontal representatives dual to the kernel of the bracket map: pick
  // gamma_i supported on the pivot pairs of the kernel row space with
  // gamma_i(kappa_j) = delta_ij.
  const MatXq kt = kernel.transpose();  // q x #pairs, rows = kernel basis
  MatXq red = kt;
  const std::vector<int> pivots = rref_inplace(red);
  const Eigen::Index q = kt.rows();
  MatXq sub(q, q);
  for (Eigen::Index r = 0; r < q; ++r)
    for (Eigen::Index c = 0; c < q; ++c) sub(r, c) = kt(r, pivots[c]);
  const MatXq sub_inv = inverse(sub);
  for (Eigen::Index i = 0; i < q; ++i) {
    GradedFormQ g = zero_form<Rat>(alg, 2);
    const ExteriorBasis& basis = ExteriorBasis::get(alg.dim());
    for (Eigen::Index c = 0; c < q; ++c) {
      const auto& [a, b] = pairs[static_cast<std::size_t>(pivots[c])];
      const std::uint32_t mask = (1u << (alg.layer_offset(1) + a)) |
                                 (1u << (alg.layer_offset(1) + b));
      g.coeff[basis.rank_of(mask)] += sub_inv(c, i);
    }
    out.two_forms.push_back(std::move(g));
  }

  // Dual basis in J^{N-2} against these representatives.
  const std::vector<GradedFormQ> j_comp = ideal_J(alg, alg.dim() - 2);
  const std::size_t nq = out.two_forms.size();
  if (j_comp.size() != nq)
    throw std::logic_error("rigidity_test_forms: J dimension mismatch");
  MatXq pairing(static_cast<Eigen::Index>(nq), static_cast<Eigen::Index>(nq));
  for (std::size_t i = 0; i < nq; ++i)
    for (std::size_t j = 0; j < nq; ++j)
      pairing(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          wedge<Rat>(alg, out.two_forms[i], j_comp[j]).coeff[0];
  const MatXq inv = inverse(pairing);
  for (std::size_t j = 0; j < nq; ++j) {
    GradedFormQ g = zero_form<Rat>(alg, alg.dim() - 2);
    for (std::size_t l = 0; l < nq; ++l)
      g.coeff += j_comp[l].coeff *
                 inv(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
    out.two_form_duals.push_back(std::move(g));
  }
  return out;
}

}  // namespace carnot
