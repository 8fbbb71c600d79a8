#pragma once

#include <random>

#include "carnot/algebra.hpp"

namespace carnot {

/// Uniform rational with numerator in [-max_num, max_num] and denominator in
/// [1, max_den]; rejects zero when nonzero is set.
Rat random_rat(std::mt19937_64& rng, int max_num = 6, int max_den = 4,
               bool nonzero = false);

VecXq random_vec_q(int n, std::mt19937_64& rng, int max_num = 6,
                   int max_den = 4);

/// Random conformal-symplectic graded automorphism of heisenberg(n): the
/// horizontal block scales the bracket form by a nonzero rational c, and the
/// center scales by c.
MatXq random_heisenberg_auto(int n, std::mt19937_64& rng);

/// Random graded automorphism of a free nilpotent algebra on 2 generators:
/// any invertible horizontal block extends.
MatXq random_free2_auto(const CarnotAlgebra& alg, std::mt19937_64& rng);

/// Random graded automorphism of a product of isomorphic Heisenberg factors,
/// composed with the given factor permutation (index i of the source factor
/// maps onto factor perm[i]).
MatXq random_product_heisenberg_auto(const CarnotAlgebra& prod, int n,
                                     const std::vector<int>& perm,
                                     std::mt19937_64& rng);

/// Random graded homomorphism heisenberg(n_src) -> heisenberg(n_dst) for
/// n_dst >= n_src; not necessarily injective on the horizontal layer
/// complement, but always a Lie homomorphism.
MatXq random_heisenberg_hom(int n_src, int n_dst, std::mt19937_64& rng);

}  // namespace carnot
