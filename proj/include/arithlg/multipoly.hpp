#pragma once

// Exact polynomials and rational functions over Q in the variables
// t = u_0, x_1 = u_1, ..., x_m = u_m. Rational functions are not fully reduced
// (that would need multivariate gcds); instead common monomials, scalar
// content and exact polynomial divisors are cancelled, equality is decided by
// cross-multiplication, and the behaviour along t = 0 is read off the t-adic
// valuation, which is well defined on any representative.

#include "arithlg/error.hpp"

#include <gmpxx.h>

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arithlg {

using Exponent = std::vector<unsigned>;

class MPoly {
public:
    explicit MPoly(unsigned nvars = 1) : nvars_(nvars) {}
    static MPoly constant(unsigned nvars, const mpq_class& c);
    static MPoly variable(unsigned nvars, unsigned i);
    static MPoly monomial(unsigned nvars, Exponent e, const mpq_class& c);

    unsigned nvars() const noexcept { return nvars_; }
    const std::map<Exponent, mpq_class>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    /// Coefficient of the zero exponent.
    mpq_class constant_term() const;
    void add_term(const Exponent& e, const mpq_class& c);

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const mpq_class& s);
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

    MPoly derivative(unsigned i) const;
    /// Largest k with u_i^k dividing the polynomial; INT_MAX for zero.
    int valuation(unsigned i) const;
    /// -1 for zero.
    int degree(unsigned i) const;
    /// Divides by u_i^k; requires valuation(i) >= k.
    MPoly divided_by_power(unsigned i, unsigned k) const;
    MPoly times_power(unsigned i, unsigned k) const;
    /// u_i -> 0.
    MPoly at_zero(unsigned i) const;
    /// u_i -> -u_i.
    MPoly negated_var(unsigned i) const;
    /// u_i^e -> u_i^{d-e}; requires d >= degree(i).
    MPoly reversed(unsigned i, unsigned d) const;
    /// Componentwise minimum exponent over all terms.
    Exponent monomial_content() const;
    /// Exact quotient when b divides a, by lexicographic division.
    static std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);

    std::string to_string(const std::vector<std::string>& names) const;

private:
    unsigned nvars_;
    std::map<Exponent, mpq_class> terms_;
};

class RatFunc {
public:
    explicit RatFunc(unsigned nvars = 1) : num_(nvars), den_(MPoly::constant(nvars, 1)) {}
    explicit RatFunc(MPoly num);
    /// InvalidInput for a zero denominator.
    RatFunc(MPoly num, MPoly den);
    static RatFunc constant(unsigned nvars, const mpq_class& c) { return RatFunc(MPoly::constant(nvars, c)); }

    unsigned nvars() const noexcept { return num_.nvars(); }
    const MPoly& num() const noexcept { return num_; }
    const MPoly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    /// InvalidInput when b = 0.
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b);

    RatFunc derivative(unsigned i) const;
    /// True iff the function does not depend on u_i.
    bool independent_of(unsigned i) const { return derivative(i).is_zero(); }
    /// v_i(num) - v_i(den); INT_MAX for zero.
    int valuation(unsigned i) const;
    bool regular_at_zero(unsigned i) const { return valuation(i) >= 0; }
    /// The restriction to u_i = 0; NotMeromorphicAlongT unless regular there.
    RatFunc at_zero(unsigned i) const;
    RatFunc times_power(unsigned i, int k) const;
    RatFunc negated_var(unsigned i) const;
    /// u_i -> 1/u_i.
    RatFunc inverted_var(unsigned i) const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    void normalize();
    MPoly num_, den_;
};

/// Default variable names t, x1, ..., xm.
std::vector<std::string> default_var_names(unsigned nvars);

}  // namespace arithlg
