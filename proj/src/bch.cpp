#include "carnot/bch.hpp"

#include <array>
#include <stdexcept>

namespace carnot {

namespace {

constexpr int kMaxStep = 6;

/// Truncated free associative polynomial on two letters: coeff[len][bits].
struct WordPoly {
  int max_len;
  std::vector<std::vector<Rat>> coeff;

  explicit WordPoly(int max_len_)
      : max_len(max_len_), coeff(max_len_ + 1) {
    for (int len = 0; len <= max_len; ++len)
      coeff[len].assign(std::size_t(1) << len, Rat(0));
  }
};

WordPoly word_mul(const WordPoly& a, const WordPoly& b) {
  WordPoly out(a.max_len);
  for (int la = 0; la <= a.max_len; ++la) {
    for (std::uint32_t wa = 0; wa < (1u << la); ++wa) {
      const Rat& ca = a.coeff[la][wa];
      if (ca.is_zero()) continue;
      for (int lb = 0; lb + la <= a.max_len; ++lb) {
        for (std::uint32_t wb = 0; wb < (1u << lb); ++wb) {
          const Rat& cb = b.coeff[lb][wb];
          if (cb.is_zero()) continue;
          // Concatenation: letters of a first, then b shifted past them.
          out.coeff[la + lb][wa | (wb << la)] += ca * cb;
        }
      }
    }
  }
  return out;
}

BchTable build_table(int step) {
  // exp(X) exp(Y) = 1 + u with u the sum over words X^i Y^j / (i! j!);
  // log(1 + u) expanded to the step gives the associative coefficients c_w.
  // By Dynkin-Specht-Wever, the Lie projection replaces each word w by its
  // right-nested bracket weighted by c_w / |w|.
  WordPoly u(step);
  for (int i = 0; i <= step; ++i) {
    for (int j = 0; i + j <= step; ++j) {
      if (i + j == 0) continue;
      const std::uint32_t bits = ((1u << j) - 1u) << i;
      u.coeff[i + j][bits] = Rat(1, 1) / (Rat(factorial(i)) * Rat(factorial(j)));
    }
  }

  WordPoly log_sum(step);
  WordPoly power(step);
  power.coeff[0][0] = Rat(1);  // u^0
  Rat sign(1);
  for (int n = 1; n <= step; ++n) {
    power = word_mul(power, u);
    const Rat f = sign / Rat(n);
    for (int len = 1; len <= step; ++len)
      for (std::uint32_t w = 0; w < (1u << len); ++w)
        log_sum.coeff[len][w] += f * power.coeff[len][w];
    sign = -sign;
  }

  BchTable table;
  table.step = step;
  for (int len = 2; len <= step; ++len) {
    for (std::uint32_t w = 0; w < (1u << len); ++w) {
      const Rat& c = log_sum.coeff[len][w];
      if (c.is_zero()) continue;
      // The innermost bracket [a, a] kills words whose last two letters match.
      const bool last = (w >> (len - 1)) & 1u;
      const bool second_last = (w >> (len - 2)) & 1u;
      if (last == second_last) continue;
      BchTerm term;
      term.coeff = c / Rat(len);
      term.coeff_d = term.coeff.to_double();
      term.len = len;
      term.bits = w;
      table.terms.push_back(std::move(term));
    }
  }
  return table;
}

}  // namespace

const BchTable& bch_table(int step) {
  if (step < 1 || step > kMaxStep)
    throw std::invalid_argument("bch_table: step must be in [1, 6]");
  static const std::array<BchTable, kMaxStep> tables = {
      build_table(1), build_table(2), build_table(3),
      build_table(4), build_table(5), build_table(6)};
  return tables[static_cast<std::size_t>(step - 1)];
}

VecXd random_unit_vector(const CarnotAlgebra& alg, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    VecXd x(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) x[i] = gauss(rng);
    const double norm = homogeneous_norm(alg, x);
    if (norm < 1e-8) continue;
    return dilate<double>(alg, 1.0 / norm, x);
  }
}

BchBoundsReport verify_bch_bounds(const CarnotAlgebra& alg, int samples,
                                  std::mt19937_64& rng) {
  if (samples < 1) throw std::invalid_argument("verify_bch_bounds: samples >= 1");
  BchBoundsReport rep;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const VecXd x = random_unit_vector(alg, rng);
    const VecXd y = random_unit_vector(alg, rng);
    const double denom =
        homogeneous_norm(alg, x) + homogeneous_norm(alg, y);
    const double p_ratio = homogeneous_norm(alg, VecXd(bch_P(alg, x, y))) / denom;
    const double br_ratio =
        homogeneous_norm(alg, bracket<double>(alg, x, y)) / denom;
    rep.max_p_ratio = std::max(rep.max_p_ratio, p_ratio);
    rep.max_bracket_ratio = std::max(rep.max_bracket_ratio, br_ratio);
  }
  return rep;
}

}  // namespace carnot
