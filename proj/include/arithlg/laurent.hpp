#pragma once

// Laurent polynomials in t_1..t_n, deformations F_x = f + sum x_k g_k, the
// parameter map (tau, x) -> (tau y_j(x))_j into the monomial coordinates, and
// the finite-field checks that go with them: non-degeneracy on faces of the
// Newton polyhedron and counts of torus critical points.

#include "arithlg/error.hpp"
#include "arithlg/ffield.hpp"
#include "arithlg/polytope.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace arithlg {

namespace detail {
inline bool coeff_is_zero(const FqElem& c) { return c.is_zero(); }
inline bool coeff_is_zero(const mpq_class& c) { return c == 0; }
inline FqElem coeff_times_int(const FqElem& c, std::int64_t k) { return c * make_elem(c.field(), k); }
inline mpq_class coeff_times_int(const mpq_class& c, std::int64_t k) { return c * mpq_class(mpz_class(std::to_string(k))); }
}  // namespace detail

/// Terms keyed by exponent vector; zero coefficients are never stored.
/// `zero` fixes the coefficient ring (for F_q, which field).
template <class C>
class Laurent {
public:
    Laurent(unsigned n, C zero) : n_(n), zero_(std::move(zero)) {
        if (n == 0) throw Error(ErrorCode::InvalidInput, "a Laurent polynomial needs at least one variable");
    }

    unsigned n() const noexcept { return n_; }
    const C& zero_coeff() const noexcept { return zero_; }
    const std::map<LatticePoint, C>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Adds c·t^w, merging with an existing term.
    Laurent& add_term(const LatticePoint& w, const C& c) {
        if (w.size() != n_) throw Error(ErrorCode::InvalidInput, "exponent vector of the wrong length");
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            if (!detail::coeff_is_zero(c)) terms_.emplace(w, c);
            return *this;
        }
        it->second = it->second + c;
        if (detail::coeff_is_zero(it->second)) terms_.erase(it);
        return *this;
    }

    C coeff(const LatticePoint& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? zero_ : it->second;
    }

    std::vector<LatticePoint> support() const {
        std::vector<LatticePoint> out;
        for (const auto& [w, c] : terms_) out.push_back(w);
        return out;
    }

    Laurent& operator+=(const Laurent& o) {
        require_compatible(o);
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        require_compatible(o);
        for (const auto& [w, c] : o.terms_) add_term(w, zero_ - c);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        a.require_compatible(b);
        Laurent r(a.n_, a.zero_);
        for (const auto& [wa, ca] : a.terms_) {
            for (const auto& [wb, cb] : b.terms_) {
                LatticePoint w(a.n_);
                for (unsigned i = 0; i < a.n_; ++i) w[i] = wa[i] + wb[i];
                r.add_term(w, ca * cb);
            }
        }
        return r;
    }
    Laurent scaled(const C& s) const {
        Laurent r(n_, zero_);
        for (const auto& [w, c] : terms_) r.add_term(w, c * s);
        return r;
    }
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    /// t_i ∂f/∂t_i for axis i in [0, n).
    Laurent log_derivative(unsigned axis) const {
        if (axis >= n_) throw Error(ErrorCode::BadIndex, "axis " + std::to_string(axis) + " out of range");
        Laurent r(n_, zero_);
        for (const auto& [w, c] : terms_) r.add_term(w, detail::coeff_times_int(c, w[axis]));
        return r;
    }

    /// Terms whose exponents satisfy pred.
    template <class Pred>
    Laurent filtered(Pred&& pred) const {
        Laurent r(n_, zero_);
        for (const auto& [w, c] : terms_) {
            if (pred(w)) r.terms_.emplace(w, c);
        }
        return r;
    }

private:
    void require_compatible(const Laurent& o) const {
        if (o.n_ != n_) throw Error(ErrorCode::InvalidInput, "Laurent polynomials in different numbers of variables");
    }
    unsigned n_;
    C zero_;
    std::map<LatticePoint, C> terms_;
};

using LaurentPoly = Laurent<FqElem>;
using QLaurentPoly = Laurent<mpq_class>;

/// sum c·t^w over F with integer coefficients reduced mod p.
LaurentPoly laurent_from_terms(const FieldSpec& F, unsigned n,
                               const std::vector<std::pair<std::int64_t, LatticePoint>>& terms);

const FieldSpec& field_of(const LaurentPoly& f);

/// Reduces rational coefficients into F_q; InvalidInput if a denominator vanishes mod p.
LaurentPoly reduce_mod(const QLaurentPoly& f, const FieldSpec& F);

/// Coefficients pushed into an extension field.
LaurentPoly embedded(const LaurentPoly& f, const FieldSpec& target);

/// Exact value at a torus point; ZeroCoordinate if some t_i = 0. The point may
/// live in an extension of f's field.
FqElem evaluate(const LaurentPoly& f, std::span<const FqElem> t);

std::string to_string(const LaurentPoly& f);

enum class DeformationKind { Subdiagram, NewtonPreserving };

struct Deformation {
    LaurentPoly base;
    std::vector<LaurentPoly> directions;
    DeformationKind kind = DeformationKind::NewtonPreserving;

    unsigned n() const { return base.n(); }
    std::size_t m() const { return directions.size(); }
};

/// Checks the containment invariant for `kind` against the Newton polyhedron
/// of the base (InvalidInput naming the offending exponent).
Deformation make_deformation(LaurentPoly base, std::vector<LaurentPoly> directions, DeformationKind kind);

/// F_x = f + sum x_k g_k over the field of x (f's field when m = 0).
LaurentPoly specialize(const Deformation& D, std::span<const FqElem> x);
/// Same, but over an explicit field containing both f's coefficients and x.
LaurentPoly specialize(const Deformation& D, std::span<const FqElem> x, const FieldSpec& field);

struct MonomialTable {
    std::vector<LatticePoint> points;

    std::size_t size() const noexcept { return points.size(); }
    std::optional<std::size_t> index_of(const LatticePoint& w) const;
};

/// Supports of f (in exponent order) followed by new exponents of g_1, ..., g_m.
MonomialTable monomial_table(const Deformation& D);
/// monomial_table(D) followed by the remaining lattice points of the Newton
/// polyhedron of f in lexicographic order.
MonomialTable lattice_point_table(const Deformation& D);

/// (tau·y_j(x))_j with y_j(x) the coefficient of t^{w_j} in F_x. ZeroTau if
/// tau = 0; TableMismatch if a support exponent is missing from the table.
std::vector<FqElem> phi_map(const Deformation& D, const MonomialTable& table, const FqElem& tau,
                            std::span<const FqElem> x);

/// f_σ: the terms of f with exponents on σ. FaceMismatch unless σ is a face of Δ(f).
LaurentPoly face_restrict(const LaurentPoly& f, const Face& sigma);
QLaurentPoly face_restrict(const QLaurentPoly& f, const Face& sigma);

Polytope newton_polyhedron_of(const LaurentPoly& f);

enum class FaceStatus {
    /// Exponents on the face are linearly independent mod p: no torus zero can exist.
    ConclusiveNondegenerate,
    /// Searched up to the stated degree without finding a common zero.
    NoZeroFound,
    Degenerate,
};

struct FaceCheck {
    Face face;
    FaceStatus status = FaceStatus::NoZeroFound;
};

struct NondegeneracyVerdict {
    enum class Kind { VerifiedUpTo, DegenerateAt };
    Kind kind = Kind::VerifiedUpTo;
    /// Largest extension degree searched.
    unsigned K = 0;
    /// Every face was settled without search.
    bool conclusive = false;
    std::vector<FaceCheck> faces;
    /// Witness for DegenerateAt.
    std::optional<Face> face;
    std::vector<FqElem> point;
    unsigned k = 0;
};

/// Largest K with (q^K - 1)^n <= limit (at least 1).
unsigned default_nondegeneracy_depth(const FieldSpec& F, unsigned n, std::uint64_t limit = 10'000'000);

NondegeneracyVerdict check_nondegenerate(const LaurentPoly& f, const Polytope& delta, unsigned K,
                                         std::uint64_t budget = kDefaultEnumerationBudget, unsigned threads = 1);

/// Distinct points of (F_{q^k}^*)^n where every t_i ∂f/∂t_i vanishes.
std::uint64_t critical_count(const LaurentPoly& f, unsigned k, std::uint64_t budget = kDefaultEnumerationBudget,
                             unsigned threads = 1);

}  // namespace arithlg
