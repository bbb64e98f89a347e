#include "arithlg/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace arithlg {

namespace {

std::size_t basis_size(std::uint64_t p) { return static_cast<std::size_t>(p - 1); }

void require_same_p(std::uint64_t a, std::uint64_t b) {
    if (a != b) throw Error(ErrorCode::InvalidInput, "cyclotomic numbers over different primes");
}

// Canonical coordinates from a length-p coefficient vector on 1, z, ..., z^{p-1}.
std::vector<mpq_class> reduce_full(std::uint64_t p, std::vector<mpq_class> full) {
    const mpq_class top = full[p - 1];
    full.resize(basis_size(p));
    if (top != 0) {
        for (auto& c : full) c -= top;
    }
    return full;
}

std::int64_t unit_mod(std::int64_t a, std::uint64_t p) {
    const auto pp = static_cast<std::int64_t>(p);
    std::int64_t r = a % pp;
    if (r < 0) r += pp;
    if (r == 0) throw Error(ErrorCode::BadIndex, "index " + std::to_string(a) + " is not a unit mod " + std::to_string(p));
    return r;
}

}  // namespace

CycloNum::CycloNum(std::uint64_t p) : p_(p), coords_(basis_size(p)) {
    if (p < 2) throw Error(ErrorCode::NotPrime, "cyclotomic field needs a prime");
}

CycloNum::CycloNum(std::uint64_t p, std::vector<mpq_class> coords) : p_(p), coords_(std::move(coords)) {
    if (p < 2) throw Error(ErrorCode::NotPrime, "cyclotomic field needs a prime");
    if (coords_.size() == p) {
        coords_ = reduce_full(p, std::move(coords_));
    } else if (coords_.size() != basis_size(p)) {
        throw Error(ErrorCode::InvalidInput, "cyclotomic coordinate vector has the wrong length");
    }
    for (auto& c : coords_) c.canonicalize();
}

CycloNum CycloNum::rational(std::uint64_t p, const mpq_class& v) {
    CycloNum z(p);
    z.coords_[0] = v;
    return z;
}

CycloNum CycloNum::zeta_power(std::uint64_t p, std::int64_t k) {
    const auto pp = static_cast<std::int64_t>(p);
    std::int64_t e = k % pp;
    if (e < 0) e += pp;
    std::vector<mpq_class> full(p);
    full[static_cast<std::size_t>(e)] = 1;
    return CycloNum(p, reduce_full(p, std::move(full)));
}

CycloNum CycloNum::from_exponent_counts(std::uint64_t p, std::span<const std::int64_t> counts) {
    if (counts.size() != p) throw Error(ErrorCode::InvalidInput, "exponent count vector must have length p");
    std::vector<mpq_class> full(p);
    for (std::size_t j = 0; j < p; ++j) full[j] = mpq_class(mpz_class(std::to_string(counts[j])));
    return CycloNum(p, reduce_full(p, std::move(full)));
}

bool CycloNum::is_zero() const {
    for (const auto& c : coords_) {
        if (c != 0) return false;
    }
    return true;
}

bool CycloNum::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i) {
        if (coords_[i] != 0) return false;
    }
    return true;
}

mpq_class CycloNum::rational_value() const {
    if (!is_rational()) throw Error(ErrorCode::InvalidInput, "cyclotomic number is not rational: " + to_string());
    return coords_[0];
}

CycloNum CycloNum::operator-() const {
    CycloNum r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
    require_same_p(p_, o.p_);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
    require_same_p(p_, o.p_);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    require_same_p(a.p_, b.p_);
    const std::uint64_t p = a.p_;
    std::vector<mpq_class> full(p);
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
        if (a.coords_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coords_.size(); ++j) {
            if (b.coords_[j] == 0) continue;
            full[(i + j) % p] += a.coords_[i] * b.coords_[j];
        }
    }
    return CycloNum(p, reduce_full(p, std::move(full)));
}

CycloNum& CycloNum::operator*=(const CycloNum& o) { return *this = *this * o; }

CycloNum& CycloNum::operator*=(const mpq_class& s) {
    for (auto& c : coords_) c *= s;
    return *this;
}

CycloNum& CycloNum::operator/=(const mpq_class& s) {
    if (s == 0) throw Error(ErrorCode::InvalidInput, "division by zero");
    for (auto& c : coords_) c /= s;
    return *this;
}

bool operator==(const CycloNum& a, const CycloNum& b) { return a.p_ == b.p_ && a.coords_ == b.coords_; }

mpq_class CycloNum::norm() const {
    CycloNum prod = *this;
    for (std::uint64_t a = 2; a < p_; ++a) prod *= conj_sigma(*this, static_cast<std::int64_t>(a));
    return prod.rational_value();
}

CycloNum CycloNum::inverse() const {
    if (is_zero()) throw Error(ErrorCode::InvalidInput, "inverse of zero");
    CycloNum others = rational(p_, 1);
    for (std::uint64_t a = 2; a < p_; ++a) others *= conj_sigma(*this, static_cast<std::int64_t>(a));
    const mpq_class n = (*this * others).rational_value();
    return others / n;
}

CycloNum CycloNum::pow(unsigned e) const {
    CycloNum r = rational(p_, 1);
    CycloNum b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

std::string CycloNum::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const mpq_class& c = coords_[i];
        if (c == 0) continue;
        const bool neg = c < 0;
        const mpq_class mag = neg ? mpq_class(-c) : c;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << '*';
            os << 'z';
            if (i > 1) os << '^' << i;
        }
    }
    if (first) os << '0';
    return os.str();
}

CycloNum psi(const FqElem& a) {
    return CycloNum::zeta_power(a.field().p(), static_cast<std::int64_t>(trace_to_prime(a)));
}

CycloNum conj_sigma(const CycloNum& z, std::int64_t a) {
    const std::uint64_t p = z.p();
    const auto u = static_cast<std::uint64_t>(unit_mod(a, p));
    std::vector<mpq_class> full(p);
    for (std::size_t i = 0; i < z.coords().size(); ++i) full[(i * u) % p] += z.coords()[i];
    return CycloNum(p, reduce_full(p, std::move(full)));
}

std::complex<double> embed_complex(const CycloNum& z, std::int64_t a) {
    const std::uint64_t p = z.p();
    const auto u = static_cast<std::uint64_t>(unit_mod(a, p));
    long double re = 0.0L;
    long double im = 0.0L;
    for (std::size_t i = 0; i < z.coords().size(); ++i) {
        const mpq_class& c = z.coords()[i];
        if (c == 0) continue;
        const long double cv = static_cast<long double>(c.get_d());
        const long double angle = 2.0L * std::numbers::pi_v<long double> *
                                  static_cast<long double>((i * u) % p) / static_cast<long double>(p);
        re += cv * std::cos(angle);
        im += cv * std::sin(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::vector<std::int64_t> embedding_indices(std::uint64_t p) {
    std::vector<std::int64_t> out;
    for (std::uint64_t a = 1; a < p; ++a) out.push_back(static_cast<std::int64_t>(a));
    return out;
}

// ---- CycloPoly ----------------------------------------------------------------

CycloPoly::CycloPoly(std::uint64_t p, std::vector<CycloNum> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) require_same_p(p_, c.p());
    trim();
}

void CycloPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool CycloPoly::is_monic() const {
    return !coeffs_.empty() && coeffs_.back() == CycloNum::rational(p_, 1);
}

CycloNum CycloPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : CycloNum(p_); }

CycloNum CycloPoly::evaluate(const CycloNum& x) const {
    CycloNum acc(p_);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

CycloPoly operator+(const CycloPoly& a, const CycloPoly& b) {
    require_same_p(a.p_, b.p_);
    std::vector<CycloNum> r(std::max(a.coeffs_.size(), b.coeffs_.size()), CycloNum(a.p_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return CycloPoly(a.p_, std::move(r));
}

CycloPoly operator-(const CycloPoly& a, const CycloPoly& b) {
    require_same_p(a.p_, b.p_);
    std::vector<CycloNum> r(std::max(a.coeffs_.size(), b.coeffs_.size()), CycloNum(a.p_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] -= b.coeffs_[i];
    return CycloPoly(a.p_, std::move(r));
}

CycloPoly operator*(const CycloPoly& a, const CycloPoly& b) {
    require_same_p(a.p_, b.p_);
    if (a.is_zero() || b.is_zero()) return CycloPoly(a.p_);
    std::vector<CycloNum> r(a.coeffs_.size() + b.coeffs_.size() - 1, CycloNum(a.p_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return CycloPoly(a.p_, std::move(r));
}

CycloPoly CycloPoly::derivative() const {
    std::vector<CycloNum> r;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) r.push_back(coeffs_[i] * mpq_class(static_cast<long>(i)));
    return CycloPoly(p_, std::move(r));
}

CycloPoly CycloPoly::truncated(std::size_t n) const {
    std::vector<CycloNum> r(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(n, coeffs_.size())));
    return CycloPoly(p_, std::move(r));
}

CycloPoly CycloPoly::conjugated(std::int64_t a) const {
    std::vector<CycloNum> r;
    for (const auto& c : coeffs_) r.push_back(conj_sigma(c, a));
    return CycloPoly(p_, std::move(r));
}

std::vector<std::complex<double>> CycloPoly::embedded(std::int64_t a) const {
    std::vector<std::complex<double>> r;
    for (const auto& c : coeffs_) r.push_back(embed_complex(c, a));
    return r;
}

std::string CycloPoly::to_string(char var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        const bool unit = coeffs_[i] == CycloNum::rational(p_, 1);
        if (!unit || i == 0) os << '(' << coeffs_[i].to_string() << ')';
        if (i > 0) {
            if (!unit) os << '*';
            os << var;
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

// ---- power sums and reconstruction ---------------------------------------------

CycloPoly char_poly_from_power_sums(std::span<const CycloNum> ps, std::size_t r) {
    if (ps.size() < r) {
        throw Error(ErrorCode::LengthTooShort,
                    "need " + std::to_string(r) + " power sums, got " + std::to_string(ps.size()));
    }
    if (r == 0) return CycloPoly(ps.empty() ? 2 : ps.front().p(), {CycloNum::rational(ps.empty() ? 2 : ps.front().p(), 1)});
    const std::uint64_t p = ps.front().p();
    // k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    std::vector<CycloNum> e{CycloNum::rational(p, 1)};
    for (std::size_t k = 1; k <= r; ++k) {
        CycloNum acc(p);
        for (std::size_t i = 1; i <= k; ++i) {
            CycloNum term = e[k - i] * ps[i - 1];
            if (i % 2 == 1) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push_back(acc / mpq_class(static_cast<long>(k)));
    }
    std::vector<CycloNum> coeffs(r + 1, CycloNum(p));
    for (std::size_t i = 0; i <= r; ++i) coeffs[r - i] = (i % 2 == 0) ? e[i] : -e[i];
    return CycloPoly(p, std::move(coeffs));
}

bool validate_power_sums(const CycloPoly& P, std::span<const CycloNum> ps) {
    if (!P.is_monic()) return false;
    const auto r = static_cast<std::size_t>(P.degree());
    // p_k = sum_{i=1}^r (-1)^{i-1} e_i p_{k-i}, with e_i = (-1)^i coeff(r-i).
    for (std::size_t k = r + 1; k <= ps.size(); ++k) {
        CycloNum acc(P.p());
        for (std::size_t i = 1; i <= r; ++i) acc -= P.coeff(r - i) * ps[k - i - 1];
        if (!(acc == ps[k - 1])) return false;
    }
    return true;
}

std::vector<CycloNum> exp_log_series(std::span<const CycloNum> c) {
    const std::uint64_t p = c.empty() ? 2 : c.front().p();
    std::vector<CycloNum> l{CycloNum::rational(p, 1)};
    for (std::size_t n = 1; n <= c.size(); ++n) {
        CycloNum acc(p);
        for (std::size_t k = 1; k <= n; ++k) acc += c[k - 1] * l[n - k];
        l.push_back(acc / mpq_class(static_cast<long>(n)));
    }
    return l;
}

CycloPoly minimal_recurrence(std::span<const CycloNum> seq) {
    const std::uint64_t p = seq.empty() ? 2 : seq.front().p();
    const CycloNum one = CycloNum::rational(p, 1);
    std::vector<CycloNum> C{one};
    std::vector<CycloNum> B{one};
    std::size_t L = 0;
    std::size_t shift = 1;
    CycloNum b = one;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        CycloNum d = seq[n];
        for (std::size_t i = 1; i <= L && i < C.size(); ++i) d += C[i] * seq[n - i];
        if (d.is_zero()) {
            ++shift;
            continue;
        }
        const CycloNum coef = d / b;
        std::vector<CycloNum> next = C;
        if (next.size() < B.size() + shift) next.resize(B.size() + shift, CycloNum(p));
        for (std::size_t i = 0; i < B.size(); ++i) next[i + shift] -= coef * B[i];
        if (2 * L <= n) {
            B = C;
            L = n + 1 - L;
            b = d;
            shift = 1;
        } else {
            ++shift;
        }
        C = std::move(next);
    }
    C.resize(std::max<std::size_t>(C.size(), L + 1), CycloNum(p));
    C.resize(L + 1, CycloNum(p));
    return CycloPoly(p, std::move(C));
}

namespace {

// Solves A x = rhs exactly; nullopt if inconsistent. Free variables are set to 0.
std::optional<std::vector<CycloNum>> solve_linear(std::vector<std::vector<CycloNum>> A, std::vector<CycloNum> rhs,
                                                  std::size_t unknowns, std::uint64_t p) {
    const std::size_t rows = A.size();
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < unknowns && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && A[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[row]);
        std::swap(rhs[piv], rhs[row]);
        const CycloNum inv = A[row][col].inverse();
        for (std::size_t j = col; j < unknowns; ++j) A[row][j] *= inv;
        rhs[row] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || A[r][col].is_zero()) continue;
            const CycloNum f = A[r][col];
            for (std::size_t j = col; j < unknowns; ++j) A[r][j] -= f * A[row][j];
            rhs[r] -= f * rhs[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < rows; ++r) {
        if (!rhs[r].is_zero()) return std::nullopt;
    }
    std::vector<CycloNum> x(unknowns, CycloNum(p));
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = rhs[r];
    return x;
}

struct Pade {
    CycloPoly numerator;
    CycloPoly denominator;
};

// Minimal total degree N/D with N(0) = D(0) = 1 matching l_0..l_K.
std::optional<Pade> minimal_pade(std::span<const CycloNum> l, std::uint64_t p) {
    const std::size_t K = l.size() - 1;
    if (K < 2) return std::nullopt;
    const std::size_t max_total = (K - 2) / 2;
    auto coef = [&](std::ptrdiff_t i) { return i < 0 ? CycloNum(p) : l[static_cast<std::size_t>(i)]; };
    for (std::size_t s = 0; s <= max_total; ++s) {
        for (std::size_t a = 0; a <= s; ++a) {
            const std::size_t b = s - a;
            std::vector<std::vector<CycloNum>> A;
            std::vector<CycloNum> rhs;
            for (std::size_t n = a + 1; n <= K; ++n) {
                std::vector<CycloNum> rowv;
                for (std::size_t i = 1; i <= b; ++i) {
                    rowv.push_back(coef(static_cast<std::ptrdiff_t>(n) - static_cast<std::ptrdiff_t>(i)));
                }
                A.push_back(std::move(rowv));
                rhs.push_back(-l[n]);
            }
            auto sol = solve_linear(std::move(A), std::move(rhs), b, p);
            if (!sol) continue;
            std::vector<CycloNum> d{CycloNum::rational(p, 1)};
            d.insert(d.end(), sol->begin(), sol->end());
            CycloPoly D(p, std::move(d));
            CycloPoly series(p, std::vector<CycloNum>(l.begin(), l.end()));
            CycloPoly N = (series * D).truncated(a + 1);
            return Pade{std::move(N), std::move(D)};
        }
    }
    return std::nullopt;
}

}  // namespace

RationalReconstruction linear_recurrence_reconstruct(std::span<const CycloNum> c) {
    const std::size_t K = c.size();
    if (K < 2) throw Error(ErrorCode::Unstable, "at least two coefficients are needed");
    const std::uint64_t p = c.front().p();
    const auto l = exp_log_series(c);
    auto full = minimal_pade(l, p);
    if (!full) {
        throw Error(ErrorCode::Unstable, "no rational function of total degree <= " + std::to_string((K - 2) / 2) +
                                             " matches " + std::to_string(K) + " coefficients");
    }
    RationalReconstruction out{full->numerator, full->denominator, false, false};

    if (K >= 3) {
        auto shorter = minimal_pade(std::span<const CycloNum>(l.data(), K), p);
        out.stable = shorter && shorter->numerator == out.numerator && shorter->denominator == out.denominator;
    }

    // Second route: the power sums c_k themselves satisfy the recurrence of the
    // reciprocal roots; their generating function must equal T L'/L.
    const CycloPoly C = minimal_recurrence(c);
    const auto order = static_cast<std::size_t>(C.degree());
    CycloPoly S(p, std::vector<CycloNum>(c.begin(), c.end()));
    const CycloPoly P0 = (C * S).truncated(order);
    const CycloPoly& N = out.numerator;
    const CycloPoly& D = out.denominator;
    const CycloPoly lhs = P0 * N * D;
    const CycloPoly rhs = C * (N.derivative() * D - N * D.derivative());
    out.recurrence_agrees = lhs == rhs;
    return out;
}

}  // namespace arithlg
