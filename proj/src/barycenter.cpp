#include "carnot/barycenter.hpp"

#include <cmath>

namespace carnot {

double bracket_norm_bound(const CarnotAlgebra& alg) {
  double sq = 0.0;
  for (int i = 0; i < alg.dim(); ++i) {
    for (int j = 0; j < alg.dim(); ++j) {
      for (const auto& [k, c] : alg.bracket_terms_d(i, j)) {
        (void)k;
        sq += c * c;
      }
    }
  }
  return std::sqrt(sq);
}

namespace {

/// Right-nested bracket of an explicit letter list.
VecXd eval_word(const CarnotAlgebra& alg, const std::vector<VecXd>& letters) {
  VecXd v = letters.back();
  for (int pos = static_cast<int>(letters.size()) - 2; pos >= 0; --pos)
    v = bracket<double>(alg, letters[static_cast<std::size_t>(pos)], v);
  return v;
}

}  // namespace

MomentSet MomentSet::compute(const CarnotAlgebra& alg,
                             const DiscreteMeasure<double>& nu) {
  MomentSet out;
  const int m = alg.step();
  const VecXd e = VecXd::Zero(alg.dim());
  out.moment_m = moment<double>(alg, nu, m, e);

  for (int j = 1; j <= m; ++j) {
    VecXd mean = VecXd::Zero(alg.layer_dim(j));
    for (std::size_t k = 0; k < nu.size(); ++k)
      mean += nu.weights[k] *
              nu.points[k].segment(alg.layer_offset(j), alg.layer_dim(j));
    out.layer_means.push_back(mean);
  }

  const VecXd xbar = com<double>(alg, nu);
  const VecXd neg_xbar = -xbar;
  const double bnorm = bracket_norm_bound(alg);
  const BchTable& table = bch_table(m);

  // One moment per (BCH term, layer assignment of its letters); assignments
  // whose total layer exceeds the step are pruned (the bracket vanishes by
  // grading). X-slots are frozen at -log(com), Y-slots integrate against nu.
  for (const BchTerm& t : table.terms) {
    std::vector<int> assign(static_cast<std::size_t>(t.len), 1);
    for (;;) {
      int total = 0;
      for (int a : assign) total += a;
      if (total <= m) {
        std::vector<VecXd> letters(static_cast<std::size_t>(t.len));
        double c_const = std::abs(t.coeff_d) *
                         std::pow(bnorm, static_cast<double>(t.len - 1));
        for (int pos = 0; pos < t.len; ++pos) {
          if ((t.bits >> pos) & 1u) continue;
          const VecXd proj = project_layer<double>(
              alg, assign[static_cast<std::size_t>(pos)], neg_xbar);
          letters[static_cast<std::size_t>(pos)] = proj;
          c_const *= euclidean_norm(alg, proj);
        }
        VecXd acc = VecXd::Zero(alg.dim());
        for (std::size_t k = 0; k < nu.size(); ++k) {
          std::vector<VecXd> concrete = letters;
          for (int pos = 0; pos < t.len; ++pos) {
            if ((t.bits >> pos) & 1u) {
              concrete[static_cast<std::size_t>(pos)] = project_layer<double>(
                  alg, assign[static_cast<std::size_t>(pos)], nu.points[k]);
            }
          }
          acc += nu.weights[k] * eval_word(alg, concrete);
        }
        out.values.push_back(euclidean_norm(alg, acc));
        out.bounds.push_back(c_const);
      }
      int pos = 0;
      while (pos < t.len && ++assign[static_cast<std::size_t>(pos)] > m) {
        assign[static_cast<std::size_t>(pos)] = 1;
        ++pos;
      }
      if (pos == t.len) break;
    }
  }
  return out;
}

bool MomentSet::all_finite() const {
  for (const VecXd& v : layer_means)
    if (!v.allFinite()) return false;
  for (double v : values)
    if (!std::isfinite(v)) return false;
  for (double b : bounds)
    if (!std::isfinite(b)) return false;
  return std::isfinite(moment_m);
}

double MomentSet::max_bound_violation() const {
  double worst = -1e300;
  for (std::size_t i = 0; i < values.size(); ++i)
    worst = std::max(worst, values[i] - bounds[i] * (1.0 + moment_m));
  return worst;
}

}  // namespace carnot
