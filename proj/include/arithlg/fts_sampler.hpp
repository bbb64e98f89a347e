#pragma once

// Random test material for the connection calculus: unipotent gauge
// transformations, Frobenius type structures that satisfy the flatness
// conditions by construction, unconstrained random tuples and single-entry
// perturbations. Deterministic for a given generator state.

#include "arithlg/connalg.hpp"

#include <random>
#include <utility>

namespace arithlg {

/// Up to three terms with coefficients in [-2, 2] and total degree <= max_deg;
/// t appears only if with_t.
MPoly random_poly(unsigned nvars, unsigned max_deg, bool with_t, std::mt19937_64& rng);

RMatrix random_matrix(std::size_t r, unsigned nvars, unsigned max_deg, bool with_t, std::mt19937_64& rng);

/// h = I + N with N strictly upper triangular of degree <= 1, and h^{-1}.
std::pair<RMatrix, RMatrix> random_unipotent(std::size_t r, unsigned nvars, bool with_t, std::mt19937_64& rng);

/// h^{-1} X h.
RMatrix conjugate(const RMatrix& hinv, const RMatrix& X, const RMatrix& h);

/// A flat structure: A = 0, R_inf = diag(w) with w in {0,1,2}, Φ built from
/// E_ab with w_b - w_a = 1, R_0 = a + bΦ_1, all moved by a gauge
/// transformation polynomial in x.
FTSTuple random_valid_fts(std::size_t r, unsigned m, std::mt19937_64& rng);

/// Independent random polynomial entries of degree <= 2.
FTSTuple random_fts(std::size_t r, unsigned m, std::mt19937_64& rng);

/// Adds a random nonzero polynomial to one entry of A_1, Φ_1, R_0 or R_inf.
FTSTuple perturbed_fts(FTSTuple T, std::mt19937_64& rng);

}  // namespace arithlg
