#pragma once

// Exact arithmetic in Q(zeta_p), the value ring of every exponential sum and
// Frobenius trace computed here. Elements are stored in the power basis
// 1, zeta, ..., zeta^{p-2}; zeta^{p-1} is rewritten through 1 + zeta + ... +
// zeta^{p-1} = 0, so the representation is canonical and equality is
// coordinate-wise. For p = 2 the field is Q and zeta = -1.

#include "arithlg/error.hpp"
#include "arithlg/ffield.hpp"

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace arithlg {

class CycloNum {
public:
    explicit CycloNum(std::uint64_t p);
    CycloNum(std::uint64_t p, std::vector<mpq_class> coords);

    static CycloNum rational(std::uint64_t p, const mpq_class& v);
    static CycloNum zeta_power(std::uint64_t p, std::int64_t k);
    /// sum_j counts[j] zeta^j for j in [0, p).
    static CycloNum from_exponent_counts(std::uint64_t p, std::span<const std::int64_t> counts);

    std::uint64_t p() const noexcept { return p_; }
    const std::vector<mpq_class>& coords() const noexcept { return coords_; }
    bool is_zero() const;
    bool is_rational() const;
    /// Throws InvalidInput unless is_rational().
    mpq_class rational_value() const;

    CycloNum operator-() const;
    CycloNum& operator+=(const CycloNum& o);
    CycloNum& operator-=(const CycloNum& o);
    CycloNum& operator*=(const CycloNum& o);
    CycloNum& operator*=(const mpq_class& s);
    CycloNum& operator/=(const mpq_class& s);
    friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
    friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator*(CycloNum a, const mpq_class& s) { return a *= s; }
    friend CycloNum operator/(CycloNum a, const mpq_class& s) { return a /= s; }
    friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }
    friend bool operator==(const CycloNum& a, const CycloNum& b);

    /// Product of the conjugates; always rational.
    mpq_class norm() const;
    CycloNum inverse() const;
    CycloNum pow(unsigned e) const;

    /// Human-readable, e.g. "2 + z^2 + z^3".
    std::string to_string() const;

private:
    std::uint64_t p_;
    std::vector<mpq_class> coords_;
};

/// psi(a) = zeta_p^{Tr_{F_q/F_p}(a)}.
CycloNum psi(const FqElem& a);

/// The Galois automorphism zeta -> zeta^a; BadIndex unless gcd(a, p) = 1.
CycloNum conj_sigma(const CycloNum& z, std::int64_t a);

/// The complex embedding zeta -> exp(2 pi i a / p); BadIndex unless gcd(a, p) = 1.
std::complex<double> embed_complex(const CycloNum& z, std::int64_t a);

/// Units mod p in ascending order: the embedding indices.
std::vector<std::int64_t> embedding_indices(std::uint64_t p);

/// Polynomial with CycloNum coefficients, low-degree-first, trailing zeros trimmed.
class CycloPoly {
public:
    explicit CycloPoly(std::uint64_t p) : p_(p) {}
    CycloPoly(std::uint64_t p, std::vector<CycloNum> coeffs);

    std::uint64_t p() const noexcept { return p_; }
    const std::vector<CycloNum>& coeffs() const noexcept { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const;
    CycloNum coeff(std::size_t i) const;
    CycloNum evaluate(const CycloNum& x) const;

    friend CycloPoly operator+(const CycloPoly& a, const CycloPoly& b);
    friend CycloPoly operator-(const CycloPoly& a, const CycloPoly& b);
    friend CycloPoly operator*(const CycloPoly& a, const CycloPoly& b);
    friend bool operator==(const CycloPoly& a, const CycloPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Formal derivative.
    CycloPoly derivative() const;
    /// Coefficients of degree < n.
    CycloPoly truncated(std::size_t n) const;
    /// Applies conj_sigma coefficient-wise.
    CycloPoly conjugated(std::int64_t a) const;
    /// Coefficients mapped through embed_complex, low-degree-first.
    std::vector<std::complex<double>> embedded(std::int64_t a) const;

    std::string to_string(char var = 'T') const;

private:
    void trim();
    std::uint64_t p_;
    std::vector<CycloNum> coeffs_;
};

/// Monic degree-r polynomial whose roots have power sums ps[0..r-1] (p_1..p_r),
/// via Newton's identities.
CycloPoly char_poly_from_power_sums(std::span<const CycloNum> ps, std::size_t r);

/// True iff every p_k with k > deg P satisfies the recurrence induced by P.
bool validate_power_sums(const CycloPoly& P, std::span<const CycloNum> ps);

/// Coefficients l_0..l_K of exp(sum_k c_k T^k / k) for c = c_1..c_K.
std::vector<CycloNum> exp_log_series(std::span<const CycloNum> c);

/// Minimal connection polynomial C(T) = 1 + C_1 T + ... + C_L T^L of the
/// sequence (c_n + sum_i C_i c_{n-i} = 0 for n > L), by Berlekamp-Massey.
CycloPoly minimal_recurrence(std::span<const CycloNum> seq);

struct RationalReconstruction {
    CycloPoly numerator;
    CycloPoly denominator;
    /// Same answer from the first K-1 coefficients.
    bool stable = false;
    /// The power-sum recurrence (Berlekamp-Massey on c_k) reproduces
    /// T L'/L of the reconstructed function.
    bool recurrence_agrees = false;
};

/// Rational L(T) = N(T)/D(T), N(0) = D(0) = 1, of minimal total degree with
/// log L = sum c_k T^k / k up to order K = c.size(). Unstable when nothing of
/// total degree <= (K-2)/2 matches.
RationalReconstruction linear_recurrence_reconstruct(std::span<const CycloNum> c);

}  // namespace arithlg
