#pragma once

// Exponential sums over the torus (F_{q^k}^*)^n with values in Z[zeta_p]:
// the deformation family sum at (tau, x), the GKZ sum at a point y of the
// monomial coordinates, zero counts, and the tau-summed traces that feed the
// L-function of the tau-family.
//
// Every sum is accumulated as a histogram of absolute traces (p counters plus
// a zero count) over contiguous chunks of the torus odometer, so the result is
// bit-identical for any number of worker threads.

#include "arithlg/cyclotomic.hpp"
#include "arithlg/laurent.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace arithlg {

/// Cap on the torus points spent on the double-enumeration cross-check.
inline constexpr std::uint64_t kCrossCheckLimit = 10'000'000;

enum class Character { Psi, PsiInverse };

struct SumOptions {
    std::uint64_t budget = kDefaultEnumerationBudget;
    unsigned threads = 1;
    Character character = Character::Psi;
    /// Use discrete-log tables when the field is small enough; off forces the
    /// generic element arithmetic (same results, much slower).
    bool log_tables = true;
};

/// Histogram of Tr(L(t)) over the torus of L's field.
struct TraceHistogram {
    /// counts[a] = #{t : L(t) != 0, Tr L(t) = a}.
    std::vector<std::uint64_t> counts;
    std::uint64_t zeros = 0;
};

TraceHistogram trace_histogram(const LaurentPoly& L, const SumOptions& opts = {});

/// sum over t of psi_k(tau F_x(t)), psi_k = psi ∘ Tr_{F_{q^k}/F_q}. tau and x may
/// be given in any subfield of F_{q^k}; they are embedded. ZeroTau if tau = 0.
CycloNum family_sum(const Deformation& D, unsigned k, const FqElem& tau, std::span<const FqElem> x,
                    const SumOptions& opts = {});

/// sum over t of psi(sum_j y_j t^{w_j}) over the field of y.
CycloNum gkz_sum(const MonomialTable& table, std::span<const FqElem> y, const SumOptions& opts = {});

/// #{t in (F_{q^k}^*)^n : F_x(t) = 0}.
std::uint64_t zero_count(const Deformation& D, unsigned k, std::span<const FqElem> x, const SumOptions& opts = {});

struct TauSummedTrace {
    /// c_k = (-1)^n (q^k Z_k - (q^k - 1)^n).
    mpz_class value;
    std::uint64_t zeros = 0;
    /// Sum over tau of family_sum was also enumerated and matched.
    bool cross_checked = false;
};

/// Throws Internal if the enumerated and closed-form values ever disagree.
TauSummedTrace tau_summed_trace(const Deformation& D, unsigned k, std::span<const FqElem> x,
                                const SumOptions& opts = {});

/// normalized_volume(Δ) · q^{kn/2}, the Weil-type bound for |family_sum|.
double purity_bound(const Deformation& D, unsigned k);

}  // namespace arithlg
