#pragma once

// Finite fields F_{p^m}: elements in the polynomial basis of a fixed monic
// irreducible modulus, trace to the prime field, subfield embeddings that are
// compatible along towers, and enumeration of the torus (F_q^*)^n.

#include "arithlg/error.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace arithlg {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000'000ULL;
inline constexpr std::uint64_t kDefaultEnumerableFieldBound = 1ULL << 40;

bool is_prime(std::uint64_t n) noexcept;
/// Distinct prime factors by trial division, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

struct FieldData;
class FqElem;

class FieldSpec {
public:
    /// Canonical field: the modulus is the monic irreducible polynomial of
    /// degree m whose coefficient vector, read as a base-p integer with the
    /// constant term as least significant digit, is smallest.
    static FieldSpec make(std::uint64_t p, unsigned m);
    /// Field with a caller-chosen modulus (low-degree-first, monic, irreducible).
    static FieldSpec with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus);

    std::uint64_t p() const noexcept;
    unsigned m() const noexcept;
    /// Low-degree-first, length m+1, leading coefficient 1. Prime fields use x.
    const std::vector<std::uint64_t>& modulus() const noexcept;
    bool is_canonical() const noexcept;
    bool is_prime_field() const noexcept { return m() == 1; }

    /// q = p^m when it fits in 64 bits.
    std::optional<std::uint64_t> q() const noexcept;
    /// q, or BudgetExceeded if it does not fit in 64 bits.
    std::uint64_t order() const;
    mpz_class q_big() const;

    FqElem zero() const;
    FqElem one() const;
    FqElem from_int(std::int64_t v) const;
    FqElem from_coords(std::vector<std::uint64_t> coords) const;
    /// The class of x in F_p[x]/(modulus).
    FqElem gen() const;
    /// Element whose base-p digits (constant term least significant) spell `code`.
    FqElem from_code(std::uint64_t code) const;
    /// Smallest-code generator of F_q^*. Computed once per field and cached.
    FqElem primitive() const;

    /// F_{p^k} with k = m * degree, canonical.
    FieldSpec extension(unsigned degree) const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept;

    const FieldData& data() const noexcept { return *data_; }

private:
    explicit FieldSpec(std::shared_ptr<const FieldData> d) : data_(std::move(d)) {}
    std::shared_ptr<const FieldData> data_;
    friend class FqElem;
};

class FqElem {
public:
    FqElem(FieldSpec field, std::vector<std::uint64_t> coords);

    const FieldSpec& field() const noexcept { return field_; }
    std::span<const std::uint64_t> coords() const noexcept { return coords_; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    /// Base-p integer with coords()[0] least significant. Requires q < 2^64.
    std::uint64_t code() const;

    FqElem operator-() const;
    FqElem& operator+=(const FqElem& o);
    FqElem& operator-=(const FqElem& o);
    FqElem& operator*=(const FqElem& o);
    friend FqElem operator+(FqElem a, const FqElem& b) { return a += b; }
    friend FqElem operator-(FqElem a, const FqElem& b) { return a -= b; }
    friend FqElem operator*(FqElem a, const FqElem& b) { return a *= b; }
    friend FqElem operator/(const FqElem& a, const FqElem& b) { return a * b.inverse(); }

    FqElem inverse() const;
    FqElem pow(std::uint64_t e) const;
    FqElem pow(const mpz_class& e) const;
    /// Negative exponents go through the inverse; zero^negative throws ZeroCoordinate.
    FqElem pow_signed(std::int64_t e) const;
    /// x -> x^p.
    FqElem frobenius() const;
    FqElem scaled(std::uint64_t c) const;

    friend bool operator==(const FqElem& a, const FqElem& b) noexcept;
    /// Orders by code (highest coordinate most significant). Same field only.
    friend std::strong_ordering operator<=>(const FqElem& a, const FqElem& b);

    std::string to_string() const;

private:
    void require_same_field(const FqElem& o) const;
    FieldSpec field_;
    std::vector<std::uint64_t> coords_;
};

FqElem make_elem(const FieldSpec& f, std::int64_t v);

/// F_{q^k} for F = F_q: F itself when k = 1 (even for a non-canonical
/// modulus), otherwise the canonical field of degree m·k. DegreeZero for k = 0.
FieldSpec degree_k_field(const FieldSpec& F, unsigned k);

/// Tr_{F_q/F_p}(a) = sum_{i<m} a^{p^i}, as an integer in [0, p).
std::uint64_t trace_to_prime(const FqElem& a);

/// Ring embedding F_{p^m} -> F_{p^{mk}}. Between canonical fields the images
/// come from one compatible system, so embeddings compose along any tower.
FqElem embed(const FqElem& a, const FieldSpec& target);
/// Image of the source generator x under the embedding into target.
FqElem generator_image(const FieldSpec& source, const FieldSpec& target);

/// All roots in `field` of a polynomial with coefficients in `field`
/// (low-degree-first), ascending by code. Cantor-Zassenhaus.
std::vector<FqElem> roots_in(const std::vector<FqElem>& poly, const FieldSpec& field);

/// The torus (F_q^*)^n enumerated as an odometer over exponent vectors:
/// index i has base-(q-1) digits (e_1, ..., e_n), e_n least significant, and
/// maps to (g^{e_1}, ..., g^{e_n}) for g = field.primitive().
class TorusEnumeration {
public:
    TorusEnumeration(FieldSpec field, unsigned n, std::uint64_t budget = kDefaultEnumerationBudget);

    const FieldSpec& field() const noexcept { return field_; }
    unsigned dimension() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return size_; }
    std::uint64_t axis_length() const noexcept { return axis_; }

    std::vector<std::uint64_t> exponents_at(std::uint64_t index) const;
    std::vector<FqElem> at(std::uint64_t index) const;

    /// Contiguous, disjoint, covering chunks [begin, end); empty chunks dropped.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> partition(unsigned parts) const;

    /// Visits points begin..end-1 in order. The visitor receives a span of n elements.
    template <class Visitor>
    void for_each(std::uint64_t begin, std::uint64_t end, Visitor&& visit) const {
        if (begin >= end) return;
        std::vector<std::uint64_t> e = exponents_at(begin);
        std::vector<FqElem> point = at(begin);
        const FqElem g = field_.primitive();
        for (std::uint64_t i = begin;;) {
            visit(std::span<const FqElem>(point));
            if (++i == end) break;
            for (unsigned axis = n_; axis-- > 0;) {
                point[axis] *= g;
                if (++e[axis] < axis_) break;
                e[axis] = 0;  // g^{q-1} = 1, so the coordinate is back at 1 already
            }
        }
    }

    template <class Visitor>
    void for_each(Visitor&& visit) const {
        for_each(0, size_, std::forward<Visitor>(visit));
    }

private:
    FieldSpec field_;
    unsigned n_;
    std::uint64_t axis_;
    std::uint64_t size_;
};

}  // namespace arithlg
