#pragma once

// Matrix-valued differential forms on P^1 x X in the coordinates (t, x_1..x_m)
// and the calculus of meromorphic connections d + A along t = 0: curvature,
// Poincare rank, residues and Higgs fields, the connection assembled from a
// Frobenius type structure, and the flatness and metric conditions on such a
// structure.
//
// Variable 0 is t (or s = 1/t after a chart change); variables 1..m are x.

#include "arithlg/multipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arithlg {

using RMatrix = std::vector<std::vector<RatFunc>>;

RMatrix r_zero(std::size_t r, unsigned nvars);
RMatrix r_identity(std::size_t r, unsigned nvars);
RMatrix r_add(const RMatrix& a, const RMatrix& b);
RMatrix r_sub(const RMatrix& a, const RMatrix& b);
RMatrix r_mul(const RMatrix& a, const RMatrix& b);
RMatrix r_scale(const RMatrix& a, const RatFunc& s);
/// ab - ba.
RMatrix r_bracket(const RMatrix& a, const RMatrix& b);
RMatrix r_transpose(const RMatrix& a);
RMatrix r_derivative(const RMatrix& a, unsigned var);
RMatrix r_map(const RMatrix& a, RatFunc (*fn)(const RatFunc&));
bool r_is_zero(const RMatrix& a);
bool r_equal(const RMatrix& a, const RMatrix& b);
RatFunc r_determinant(const RMatrix& a);
/// A constant matrix from rational entries.
RMatrix r_constant(const std::vector<std::vector<mpq_class>>& c, unsigned nvars);

/// Degree 1: one matrix per coordinate differential du_a, a = 0..m.
/// Degree 2: one matrix per du_a ∧ du_b with a < b.
class MatForm {
public:
    MatForm(int degree, std::size_t r, unsigned m);

    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return r_; }
    unsigned m() const noexcept { return m_; }
    unsigned nvars() const noexcept { return m_ + 1; }

    /// Degree-1 component along du_a (a = 0 is dt).
    RMatrix& component(unsigned a);
    const RMatrix& component(unsigned a) const;
    /// Degree-2 component along du_a ∧ du_b, a < b.
    RMatrix& component(unsigned a, unsigned b);
    const RMatrix& component(unsigned a, unsigned b) const;

    bool is_zero() const;
    friend bool operator==(const MatForm& a, const MatForm& b);

private:
    std::size_t index(unsigned a, unsigned b) const;
    int degree_;
    std::size_t r_;
    unsigned m_;
    std::vector<RMatrix> comps_;
};

/// dA + A ∧ A: component (a, b) is ∂_a A_b - ∂_b A_a + [A_a, A_b].
MatForm curvature(const MatForm& A);

/// Least m >= 0 with t^m A_{x_i} and t^{m+1} A_t regular along t = 0, or -1
/// when A is holomorphic there.
int poincare_rank(const MatForm& A);

/// The same connection in the chart s = 1/t: A_s = -A_t(1/s)/s^2.
MatForm to_s_chart(const MatForm& A);

struct LogRestriction {
    /// Ω_i(0, x).
    std::vector<RMatrix> restriction;
    /// Ω(0, x) = (t A_t)|_{t=0}.
    RMatrix residue;
    bool restriction_flat = false;
    /// ∂Ω/∂x_i = [Ω, Ω_i] at t = 0 for every i.
    bool residue_horizontal = false;
};

/// NotFlat unless the curvature vanishes; WrongRank unless the Poincare rank is <= 0.
LogRestriction log_restriction(const MatForm& A);

struct RankOneRestriction {
    /// Φ_i = (t A_{x_i})|_{t=0}.
    std::vector<RMatrix> phi;
    /// (t^2 A_t)|_{t=0}.
    RMatrix r0;
    bool higgs = false;
    bool commutes = false;
};

/// NotFlat unless the curvature vanishes; WrongRank unless the Poincare rank
/// is exactly 1. Internal if Φ∧Φ = 0 or [R_0, Φ] = 0 fails.
RankOneRestriction rank1_restriction(const MatForm& A);

struct FTSTuple {
    std::size_t r = 0;
    unsigned m = 0;
    /// Connection matrices of the flat part, one per x_i.
    std::vector<RMatrix> A;
    std::vector<RMatrix> Phi;
    RMatrix R0;
    RMatrix Rinf;
    std::optional<RMatrix> g;
};

/// InvalidInput for wrong shapes or t-dependent entries; SingularMetric for a
/// non-symmetric or singular g.
FTSTuple make_fts(std::size_t r, unsigned m, std::vector<RMatrix> A, std::vector<RMatrix> Phi, RMatrix R0, RMatrix Rinf,
                  std::optional<RMatrix> g = std::nullopt);

/// A + Φ/t + (R_0/t - R_inf) dt/t. Internal if the result fails to have a
/// logarithmic pole at t = infinity.
MatForm assemble_nabla(const FTSTuple& T);

struct FTSReport {
    static constexpr int kConditions = 6;
    /// flat part flat, ▽R_inf = 0, Φ∧Φ = 0, [Φ, R_0] = 0, ▽Φ = 0,
    /// ▽R_0 + Φ = [Φ, R_inf].
    bool conditions[kConditions] = {};
    bool all_conditions = false;
    bool assembled_flat = false;
};

inline constexpr const char* kFTSConditionNames[FTSReport::kConditions] = {
    "flat part is flat", "R_inf is horizontal", "Phi wedge Phi = 0",
    "[Phi, R_0] = 0",    "Phi is horizontal",  "nabla R_0 + Phi = [Phi, R_inf]",
};

/// Internal if the six conditions and the flatness of the assembled
/// connection disagree.
FTSReport verify_fts(const FTSTuple& T);

struct MetricReport {
    bool phi_self_adjoint = false;
    bool r0_self_adjoint = false;
    bool rinf_skew_adjoint = false;
    bool g_flat = false;
    bool all() const { return phi_self_adjoint && r0_self_adjoint && rinf_skew_adjoint && g_flat; }
};

/// SingularMetric when g is absent.
MetricReport verify_metric(const FTSTuple& T);

/// Whether g(x) pairs the assembled connection at t with its pullback by
/// t -> -t flatly, checked directly on the assembled form.
bool pairing_flat(const MatForm& assembled, const RMatrix& g);

}  // namespace arithlg
