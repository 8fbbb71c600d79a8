#include "carnot/builtins.hpp"

#include <stdexcept>

namespace carnot {

CarnotAlgebra heisenberg(int n) {
  if (n < 1) throw std::invalid_argument("heisenberg: n >= 1 required");
  std::vector<BracketTerm> terms;
  for (int i = 0; i < n; ++i) terms.push_back({2 * i, 2 * i + 1, 2 * n, Rat(1)});
  return CarnotAlgebra({2 * n, 1}, std::move(terms));
}

CarnotAlgebra free_step2(int q) {
  if (q < 2) throw std::invalid_argument("free_step2: q >= 2 required");
  std::vector<BracketTerm> terms;
  int next = q;
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) terms.push_back({i, j, next++, Rat(1)});
  return CarnotAlgebra({q, q * (q - 1) / 2}, std::move(terms));
}

CarnotAlgebra free_nilpotent2(int step) {
  // Hall basis on generators x = e0, y = e1:
  //   e2 = [x,y]
  //   e3 = [x,e2], e4 = [y,e2]
  //   e5 = [x,e3], e6 = [y,e3], e7 = [y,e4]   (and [x,e4] = e6 by Jacobi)
  switch (step) {
    case 2:
      return CarnotAlgebra({2, 1}, {{0, 1, 2, Rat(1)}});
    case 3:
      return CarnotAlgebra({2, 1, 2},
                           {{0, 1, 2, Rat(1)}, {0, 2, 3, Rat(1)}, {1, 2, 4, Rat(1)}});
    case 4:
      return CarnotAlgebra({2, 1, 2, 3}, {{0, 1, 2, Rat(1)},
                                          {0, 2, 3, Rat(1)},
                                          {1, 2, 4, Rat(1)},
                                          {0, 3, 5, Rat(1)},
                                          {1, 3, 6, Rat(1)},
                                          {0, 4, 6, Rat(1)},
                                          {1, 4, 7, Rat(1)}});
    default:
      throw std::invalid_argument("free_nilpotent2: step in {2,3,4} supported");
  }
}

CarnotAlgebra direct_product(const CarnotAlgebra& a, const CarnotAlgebra& b,
                             bool factors_indecomposable_nonabelian) {
  const int step = std::max(a.step(), b.step());
  std::vector<int> layer_dims(step, 0);
  for (int j = 1; j <= a.step(); ++j) layer_dims[j - 1] += a.layer_dim(j);
  for (int j = 1; j <= b.step(); ++j) layer_dims[j - 1] += b.layer_dim(j);

  std::vector<int> offsets(step + 1, 0);
  for (int j = 1; j <= step; ++j) offsets[j] = offsets[j - 1] + layer_dims[j - 1];

  // Global index of factor basis vectors: within layer j, A's block first.
  auto map_a = [&](int idx) {
    const int j = a.layer_of(idx);
    return offsets[j - 1] + (idx - a.layer_offset(j));
  };
  auto map_b = [&](int idx) {
    const int j = b.layer_of(idx);
    return offsets[j - 1] + (j <= a.step() ? a.layer_dim(j) : 0) +
           (idx - b.layer_offset(j));
  };

  std::vector<BracketTerm> terms;
  for (const BracketTerm& t : a.upper_triples())
    terms.push_back({map_a(t.i), map_a(t.j), map_a(t.k), t.c});
  for (const BracketTerm& t : b.upper_triples()) {
    int i = map_b(t.i), j = map_b(t.j);
    if (i < j) {
      terms.push_back({i, j, map_b(t.k), t.c});
    } else {
      terms.push_back({j, i, map_b(t.k), -t.c});
    }
  }

  const int n = offsets[step];
  MatXq inner = MatXq::Zero(n, n);
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      inner(map_a(r), map_a(c)) = a.inner_product()(r, c);
  for (int r = 0; r < b.dim(); ++r)
    for (int c = 0; c < b.dim(); ++c)
      inner(map_b(r), map_b(c)) = b.inner_product()(r, c);

  CarnotAlgebra prod(layer_dims, std::move(terms), std::move(inner));

  FactorInfo fa, fb;
  fa.layer_dims = a.layer_dims();
  fb.layer_dims = b.layer_dims();
  fa.indecomposable_nonabelian = factors_indecomposable_nonabelian;
  fb.indecomposable_nonabelian = factors_indecomposable_nonabelian;
  for (int idx = 0; idx < a.dim(); ++idx) fa.global_idx.push_back(map_a(idx));
  for (int idx = 0; idx < b.dim(); ++idx) fb.global_idx.push_back(map_b(idx));

  std::vector<FactorInfo> factors;
  // Nested products flatten so that H1 x H1 x H1 keeps three factors.
  auto lift = [&](const CarnotAlgebra& f, const std::vector<int>& gmap,
                  FactorInfo flat) {
    if (!f.is_product()) {
      factors.push_back(std::move(flat));
      return;
    }
    for (const FactorInfo& sub : f.factors()) {
      FactorInfo g;
      g.layer_dims = sub.layer_dims;
      g.indecomposable_nonabelian = sub.indecomposable_nonabelian;
      for (int idx : sub.global_idx) g.global_idx.push_back(gmap[idx]);
      factors.push_back(std::move(g));
    }
  };
  std::vector<int> gmap_a(a.dim()), gmap_b(b.dim());
  for (int idx = 0; idx < a.dim(); ++idx) gmap_a[idx] = map_a(idx);
  for (int idx = 0; idx < b.dim(); ++idx) gmap_b[idx] = map_b(idx);
  lift(a, gmap_a, std::move(fa));
  lift(b, gmap_b, std::move(fb));
  prod.set_factors(std::move(factors));
  return prod;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

CarnotAlgebra make_builtin(const std::string& name) {
  if (name == "h1c") return complexify(heisenberg(1)).alg;
  if (name == "h2c") return complexify(heisenberg(2)).alg;
  if (name == "free2_step2") return free_nilpotent2(2);
  if (name == "free2_step3") return free_nilpotent2(3);
  if (name == "free2_step4") return free_nilpotent2(4);
  if (name == "h1xh1") return direct_product(heisenberg(1), heisenberg(1));
  if (name == "h2xh2") return direct_product(heisenberg(2), heisenberg(2));
  if (name.rfind("free_step2_q", 0) == 0 && all_digits(name.substr(12)))
    return free_step2(std::stoi(name.substr(12)));
  if (name.size() >= 2 && name[0] == 'h' && all_digits(name.substr(1)))
    return heisenberg(std::stoi(name.substr(1)));
  throw std::invalid_argument("unknown builtin algebra '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"h1",          "h2",          "h3",          "h1c",
          "h2c",         "free2_step2", "free2_step3", "free2_step4",
          "free_step2_q3", "h1xh1",     "h2xh2"};
}

}  // namespace carnot
