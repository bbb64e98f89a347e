#pragma once

// Frobenius data of the exponential-sum sheaves: characteristic polynomials at
// a rational point (tau, x), with their purity, duality and determinant checks,
// the L-function of the tau-family at fixed x, and the monodromy filtration of
// a nilpotent matrix.

#include "arithlg/cyclotomic.hpp"
#include "arithlg/expsum.hpp"
#include "arithlg/laurent.hpp"
#include "arithlg/qmatrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace arithlg {

inline constexpr double kPurityTolerance = 1e-6;
inline constexpr std::size_t kDefaultMaxRank = 12;

/// p_k = (-1)^n family_sum(D, k, tau, x) for k = 1..2r. (tau, x) are taken
/// over the field of tau, which must contain the coefficients of D and x.
std::vector<CycloNum> stalk_power_sums(const Deformation& D, std::span<const FqElem> x, const FqElem& tau,
                                       std::size_t r, const SumOptions& opts = {});

struct FrobeniusOptions {
    SumOptions sums;
    std::size_t max_rank = kDefaultMaxRank;
    double tolerance = kPurityTolerance;
    /// Throw ToleranceExceeded instead of reporting a failed purity or
    /// determinant check.
    bool strict = false;
    /// Torus points spent on the nondegeneracy search at the parameter; 0 skips it.
    std::uint64_t nondegeneracy_limit = 100'000;
};

struct EmbeddingCheck {
    /// zeta -> exp(2 pi i a / p).
    std::int64_t index = 0;
    std::vector<std::complex<double>> roots;
    /// max | |alpha| - q^{n/2} | / q^{n/2}.
    double purity_deviation = 0;
    /// | |P(0)| - q^{nr/2} | / q^{nr/2}.
    double determinant_deviation = 0;
};

struct FrobeniusReport {
    unsigned n = 0;
    /// Order of the field the point is rational over.
    std::uint64_t q = 0;
    std::size_t rank = 0;
    /// p_1..p_{2r}.
    std::vector<CycloNum> power_sums;
    CycloPoly char_poly{2};
    std::vector<EmbeddingCheck> embeddings;
    double max_purity_deviation = 0;
    double max_determinant_deviation = 0;
    bool purity_ok = false;
    bool determinant_ok = false;
    /// T^r P(q^n/T) = P(0) · conj_{-1}(P)(T), coefficient by coefficient.
    bool duality_ok = false;
    std::vector<std::string> warnings;
};

/// Rank r = normalized_volume(Δ(f)); RankMismatch if p_{r+1}..p_{2r} do not
/// satisfy the recurrence of the polynomial built from p_1..p_r;
/// BudgetExceeded if r > max_rank.
FrobeniusReport frobenius_report(const Deformation& D, std::span<const FqElem> x, const FqElem& tau,
                                 const FrobeniusOptions& opts = {});

struct LFunctionReport {
    CycloPoly numerator{2};
    CycloPoly denominator{2};
    /// deg N - deg D.
    int minus_chi_c = 0;
    std::size_t rank = 0;
    bool swan_bound_ok = false;
    bool stable = false;
    bool recurrence_agrees = false;
    /// c_1..c_K.
    std::vector<mpz_class> traces;
    bool cross_checked = false;
    /// F_x is constant, so the tau-family is not the sheaf the bound is about.
    bool non_lisse = false;
    std::vector<std::string> notes;
};

/// L-function data from given traces c_1..c_K (which must be rational).
LFunctionReport l_function_from_traces(std::span<const CycloNum> c, std::size_t rank);

/// c_k = tau_summed_trace(D, k, x) for k = 1..kmax. InvalidInput if
/// kmax < 2(r + 1); Unstable when no rational function fits.
LFunctionReport family_l_function(const Deformation& D, std::span<const FqElem> x, unsigned kmax,
                                  const SumOptions& opts = {});

struct Filtration {
    std::size_t dim = 0;
    /// M_k for every k where M_k != M_{k-1}; M_k is constant between jumps,
    /// zero below the first and everything from the last on.
    std::map<int, Subspace> jumps;

    Subspace at(int k) const;
    /// dim M_k - dim M_{k-1}.
    std::size_t graded_dim(int k) const;

    friend bool operator==(const Filtration& a, const Filtration& b) { return a.dim == b.dim && a.jumps == b.jumps; }
};

/// The unique increasing filtration with N M_k ⊆ M_{k-2} and N^k: gr_k ≅ gr_{-k}.
/// NotNilpotent unless N^dim = 0; Internal if the result fails either property.
Filtration monodromy_filtration(const QMatrix& N);

/// Both defining properties, for any candidate.
bool is_monodromy_filtration(const QMatrix& N, const Filtration& M);

}  // namespace arithlg
