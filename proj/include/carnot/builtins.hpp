#pragma once

#include <string>
#include <vector>

#include "carnot/algebra.hpp"

namespace carnot {

/// Heisenberg group H_n: layers (2n, 1), [e_{2i-1}, e_{2i}] = e_{2n+1}.
CarnotAlgebra heisenberg(int n);

/// Free step-2 algebra on q generators: layers (q, q(q-1)/2).
CarnotAlgebra free_step2(int q);

/// Free nilpotent algebra on 2 generators of the given step (2, 3 or 4),
/// over the Hall basis.
CarnotAlgebra free_nilpotent2(int step);

/// Direct product; layers merge as V_j(A) + V_j(B) with A's block first.
/// Both factors are recorded, flagged per caller as indecomposable.
CarnotAlgebra direct_product(const CarnotAlgebra& a, const CarnotAlgebra& b,
                             bool factors_indecomposable_nonabelian = true);

/// Named registry used by the CLI and config files:
///   h1 h2 h3 ... (heisenberg), free2_step2/3/4, free_step2_q<q>,
///   h1c (complexified H_1), h1xh1, h2xh2.
/// Throws std::invalid_argument for unknown names.
CarnotAlgebra make_builtin(const std::string& name);

/// Names accepted by make_builtin, for --help output.
std::vector<std::string> builtin_names();

}  // namespace carnot
