#pragma once

// Exhaustive search for monodromy filtrations of small integer nilpotent
// matrices, independent of the kernel/image formula in frobdata. Candidate
// subspaces are the lines spanned by primitive vectors in [-3,3]^d and, for
// d = 3, the planes with primitive normals in [-6,6]^3. Every chain of
// candidates satisfying both defining properties is returned.

#include "arithlg/frobdata.hpp"

#include <cstdint>
#include <vector>

namespace arithlg {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// d in 1..3; DimensionUnsupported otherwise.
std::vector<Filtration> exhaustive_monodromy_filtrations(const IntMatrix& N);

/// Every nilpotent d x d matrix with entries in {-1, 0, 1}, d in 1..3.
std::vector<IntMatrix> small_nilpotent_matrices(int d);

QMatrix to_qmatrix(const IntMatrix& N);

}  // namespace arithlg
