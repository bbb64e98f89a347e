#include "arithlg/ffield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

namespace arithlg {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::DegreeZero: return "DegreeZero";
        case ErrorCode::IncompatibleCharacteristic: return "IncompatibleCharacteristic";
        case ErrorCode::NotAnExtension: return "NotAnExtension";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::LengthTooShort: return "LengthTooShort";
        case ErrorCode::Unstable: return "Unstable";
        case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
        case ErrorCode::DegeneratePolytope: return "DegeneratePolytope";
        case ErrorCode::FaceMismatch: return "FaceMismatch";
        case ErrorCode::ZeroCoordinate: return "ZeroCoordinate";
        case ErrorCode::TableMismatch: return "TableMismatch";
        case ErrorCode::ZeroTau: return "ZeroTau";
        case ErrorCode::RankMismatch: return "RankMismatch";
        case ErrorCode::ToleranceExceeded: return "ToleranceExceeded";
        case ErrorCode::NotNilpotent: return "NotNilpotent";
        case ErrorCode::NotMeromorphicAlongT: return "NotMeromorphicAlongT";
        case ErrorCode::NotFlat: return "NotFlat";
        case ErrorCode::WrongRank: return "WrongRank";
        case ErrorCode::SingularMetric: return "SingularMetric";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// ---- dense polynomials over F_p, low-degree-first -------------------------

using PolyP = std::vector<u64>;

void trim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP poly_mod(PolyP a, const PolyP& m, u64 p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const u64 inv_lead = powmod(m.back(), p - 2, p);
    while (a.size() > dm) {
        const u64 f = mulmod(a.back(), inv_lead, p);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) {
            a[shift + j] = (a[shift + j] + p - mulmod(f, m[j], p)) % p;
        }
        trim(a);
    }
    return a;
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    return poly_mod(std::move(r), m, p);
}

PolyP poly_powmod(PolyP base, mpz_class e, const PolyP& m, u64 p) {
    PolyP r{1};
    base = poly_mod(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

PolyP poly_gcd(PolyP a, PolyP b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        PolyP r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

PolyP poly_sub(PolyP a, const PolyP& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

// Rabin's test.
bool is_irreducible(const PolyP& f, u64 p) {
    const unsigned m = static_cast<unsigned>(f.size() - 1);
    if (m == 1) return true;
    const PolyP x{0, 1};
    const mpz_class pz(std::to_string(p));
    auto frob_iter = [&](unsigned k) {
        mpz_class e;
        mpz_pow_ui(e.get_mpz_t(), pz.get_mpz_t(), k);
        return poly_powmod(x, e, f, p);
    };
    if (poly_sub(frob_iter(m), x, p).size() != 0) return false;
    std::vector<u64> ms;
    for (u64 r : prime_factors(m)) ms.push_back(r);
    for (u64 r : ms) {
        PolyP h = poly_sub(frob_iter(m / static_cast<unsigned>(r)), x, p);
        PolyP g = poly_gcd(f, h, p);
        if (g.size() != 1) return false;
    }
    return true;
}

PolyP canonical_modulus(u64 p, unsigned m) {
    if (m == 1) return {0, 1};
    PolyP f(m + 1, 0);
    f[m] = 1;
    // Odometer over the lower coefficients, constant term least significant.
    for (;;) {
        if (f[0] != 0 && is_irreducible(f, p)) return f;
        unsigned i = 0;
        while (i < m && ++f[i] == p) f[i++] = 0;
        if (i == m) throw Error(ErrorCode::Internal, "no irreducible polynomial found");
    }
}

}  // namespace

// ---- primes ----------------------------------------------------------------

bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % sp == 0) return n == sp;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// ---- FieldData --------------------------------------------------------------

struct FieldData {
    u64 p = 0;
    unsigned m = 0;
    PolyP modulus;
    bool canonical = false;
    std::optional<u64> q;
    mutable std::once_flag primitive_once;
    mutable std::vector<u64> primitive_coords;
};

namespace {

std::shared_ptr<FieldData> build_field_data(u64 p, unsigned m, PolyP modulus, bool canonical) {
    auto d = std::make_shared<FieldData>();
    d->p = p;
    d->m = m;
    d->modulus = std::move(modulus);
    d->canonical = canonical;
    u128 q = 1;
    bool fits = true;
    for (unsigned i = 0; i < m && fits; ++i) {
        q *= p;
        if (q > static_cast<u128>(~0ULL)) fits = false;
    }
    if (fits) d->q = static_cast<u64>(q);
    return d;
}

std::mutex registry_mutex;
std::map<std::pair<u64, unsigned>, std::shared_ptr<const FieldData>>& registry() {
    static std::map<std::pair<u64, unsigned>, std::shared_ptr<const FieldData>> r;
    return r;
}

}  // namespace

FieldSpec FieldSpec::make(u64 p, unsigned m) {
    if (m == 0) throw Error(ErrorCode::DegreeZero, "extension degree must be positive");
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    {
        std::lock_guard lock(registry_mutex);
        auto it = registry().find({p, m});
        if (it != registry().end()) return FieldSpec(it->second);
    }
    auto data = build_field_data(p, m, canonical_modulus(p, m), true);
    std::lock_guard lock(registry_mutex);
    auto [it, inserted] = registry().emplace(std::make_pair(p, m), std::move(data));
    return FieldSpec(it->second);
}

FieldSpec FieldSpec::with_modulus(u64 p, std::vector<u64> modulus) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    for (auto& c : modulus) c %= p;
    trim(modulus);
    if (modulus.size() < 2) throw Error(ErrorCode::DegreeZero, "modulus must have positive degree");
    if (modulus.back() != 1) throw Error(ErrorCode::InvalidInput, "modulus must be monic");
    const unsigned m = static_cast<unsigned>(modulus.size() - 1);
    if (m == 1) return make(p, 1);
    if (!is_irreducible(modulus, p)) throw Error(ErrorCode::InvalidInput, "modulus is not irreducible");
    FieldSpec canon = make(p, m);
    if (canon.modulus() == modulus) return canon;
    return FieldSpec(build_field_data(p, m, std::move(modulus), false));
}

u64 FieldSpec::p() const noexcept { return data_->p; }
unsigned FieldSpec::m() const noexcept { return data_->m; }
const std::vector<u64>& FieldSpec::modulus() const noexcept { return data_->modulus; }
bool FieldSpec::is_canonical() const noexcept { return data_->canonical; }
std::optional<u64> FieldSpec::q() const noexcept { return data_->q; }

u64 FieldSpec::order() const {
    if (!data_->q) throw Error(ErrorCode::BudgetExceeded, "field order " + q_big().get_str() + " exceeds 64 bits");
    return *data_->q;
}

mpz_class FieldSpec::q_big() const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), data_->p, data_->m);
    return r;
}

FqElem FieldSpec::zero() const { return FqElem(*this, std::vector<u64>(m(), 0)); }

FqElem FieldSpec::one() const { return from_int(1); }

FqElem FieldSpec::from_int(std::int64_t v) const {
    std::vector<u64> c(m(), 0);
    const auto pp = static_cast<std::int64_t>(std::min<u64>(p(), static_cast<u64>(INT64_MAX)));
    std::int64_t r = v % pp;
    if (r < 0) r += pp;
    c[0] = static_cast<u64>(r) % p();
    return FqElem(*this, std::move(c));
}

FqElem FieldSpec::from_coords(std::vector<u64> coords) const {
    if (coords.size() > m()) throw Error(ErrorCode::InvalidInput, "too many coordinates for the field");
    coords.resize(m(), 0);
    for (auto& c : coords) c %= p();
    return FqElem(*this, std::move(coords));
}

FqElem FieldSpec::gen() const {
    if (m() == 1) return zero();
    std::vector<u64> c(m(), 0);
    c[1] = 1;
    return FqElem(*this, std::move(c));
}

FqElem FieldSpec::from_code(u64 code) const {
    std::vector<u64> c(m(), 0);
    for (unsigned i = 0; i < m() && code; ++i) {
        c[i] = code % p();
        code /= p();
    }
    if (code) throw Error(ErrorCode::InvalidInput, "code exceeds field size");
    return FqElem(*this, std::move(c));
}

FqElem FieldSpec::primitive() const {
    std::call_once(data_->primitive_once, [this] {
        const u64 q = order();
        if (q > kDefaultEnumerableFieldBound) {
            throw Error(ErrorCode::BudgetExceeded, "primitive element search needs q <= 2^40");
        }
        if (q == 2) {
            data_->primitive_coords = {1};
            data_->primitive_coords.resize(m(), 0);
            return;
        }
        const auto factors = prime_factors(q - 1);
        for (u64 code = 2; code < q; ++code) {
            FqElem a = from_code(code);
            bool ok = true;
            for (u64 r : factors) {
                if (a.pow((q - 1) / r).is_one()) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                data_->primitive_coords.assign(a.coords().begin(), a.coords().end());
                return;
            }
        }
        throw Error(ErrorCode::Internal, "no primitive element");
    });
    return FqElem(*this, data_->primitive_coords);
}

FieldSpec FieldSpec::extension(unsigned degree) const {
    if (degree == 0) throw Error(ErrorCode::DegreeZero, "extension degree must be positive");
    return make(p(), m() * degree);
}

bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
    return a.data_ == b.data_ || (a.p() == b.p() && a.modulus() == b.modulus());
}

// ---- FqElem ----------------------------------------------------------------

FqElem::FqElem(FieldSpec field, std::vector<u64> coords) : field_(std::move(field)), coords_(std::move(coords)) {}

FqElem make_elem(const FieldSpec& f, std::int64_t v) { return f.from_int(v); }

FieldSpec degree_k_field(const FieldSpec& F, unsigned k) {
    if (k == 0) throw Error(ErrorCode::DegreeZero, "extension degree must be positive");
    return k == 1 ? F : F.extension(k);
}

bool FqElem::is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](u64 c) { return c == 0; });
}

bool FqElem::is_one() const noexcept {
    if (coords_.empty() || coords_[0] != 1) return false;
    return std::all_of(coords_.begin() + 1, coords_.end(), [](u64 c) { return c == 0; });
}

u64 FqElem::code() const {
    field_.order();
    u64 r = 0;
    for (std::size_t i = coords_.size(); i-- > 0;) r = r * field_.p() + coords_[i];
    return r;
}

void FqElem::require_same_field(const FqElem& o) const {
    if (!(field_ == o.field_)) throw Error(ErrorCode::InvalidInput, "elements of different fields");
}

FqElem FqElem::operator-() const {
    FqElem r = *this;
    const u64 p = field_.p();
    for (auto& c : r.coords_) c = c ? p - c : 0;
    return r;
}

FqElem& FqElem::operator+=(const FqElem& o) {
    require_same_field(o);
    const u64 p = field_.p();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        u64 s = coords_[i] + o.coords_[i];
        if (s >= p || s < coords_[i]) s -= p;
        coords_[i] = s;
    }
    return *this;
}

FqElem& FqElem::operator-=(const FqElem& o) { return *this += -o; }

FqElem& FqElem::operator*=(const FqElem& o) {
    require_same_field(o);
    const u64 p = field_.p();
    const unsigned m = field_.m();
    if (m == 1) {
        coords_[0] = mulmod(coords_[0], o.coords_[0], p);
        return *this;
    }
    std::vector<u64> r(2 * m - 1, 0);
    for (unsigned i = 0; i < m; ++i) {
        if (coords_[i] == 0) continue;
        for (unsigned j = 0; j < m; ++j) {
            if (o.coords_[j] == 0) continue;
            r[i + j] = (r[i + j] + mulmod(coords_[i], o.coords_[j], p)) % p;
        }
    }
    const auto& mod = field_.modulus();
    for (std::size_t k = r.size(); k-- > m;) {
        const u64 f = r[k];
        if (f == 0) continue;
        for (unsigned j = 0; j < m; ++j) {
            r[k - m + j] = (r[k - m + j] + p - mulmod(f, mod[j], p)) % p;
        }
        r[k] = 0;
    }
    r.resize(m);
    coords_ = std::move(r);
    return *this;
}

FqElem FqElem::pow(u64 e) const {
    FqElem r = field_.one();
    FqElem b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

FqElem FqElem::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(mpz_class(-e));
    FqElem r = field_.one();
    FqElem b = *this;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) r *= b;
        if (i + 1 < bits) b *= b;
    }
    return r;
}

FqElem FqElem::inverse() const {
    if (is_zero()) throw Error(ErrorCode::ZeroCoordinate, "inverse of zero");
    if (field_.m() == 1) {
        FqElem r = *this;
        r.coords_[0] = powmod(coords_[0], field_.p() - 2, field_.p());
        return r;
    }
    return pow(mpz_class(field_.q_big() - 2));
}

FqElem FqElem::pow_signed(std::int64_t e) const {
    if (e >= 0) return pow(static_cast<u64>(e));
    if (is_zero()) throw Error(ErrorCode::ZeroCoordinate, "negative power of zero");
    return inverse().pow(static_cast<u64>(-(e + 1)) + 1);
}

FqElem FqElem::frobenius() const {
    if (field_.m() == 1) return *this;
    return pow(field_.p());
}

FqElem FqElem::scaled(u64 c) const {
    FqElem r = *this;
    const u64 p = field_.p();
    c %= p;
    for (auto& x : r.coords_) x = mulmod(x, c, p);
    return r;
}

bool operator==(const FqElem& a, const FqElem& b) noexcept {
    return a.coords_ == b.coords_ && a.field_ == b.field_;
}

std::strong_ordering operator<=>(const FqElem& a, const FqElem& b) {
    a.require_same_field(b);
    for (std::size_t i = a.coords_.size(); i-- > 0;) {
        if (a.coords_[i] != b.coords_[i]) return a.coords_[i] <=> b.coords_[i];
    }
    return std::strong_ordering::equal;
}

std::string FqElem::to_string() const {
    std::ostringstream os;
    if (coords_.size() == 1) {
        os << coords_[0];
        return os.str();
    }
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
    os << ')';
    return os.str();
}

u64 trace_to_prime(const FqElem& a) {
    const unsigned m = a.field().m();
    if (m == 1) return a.coords()[0];
    FqElem s = a;
    FqElem x = a;
    for (unsigned i = 1; i < m; ++i) {
        x = x.frobenius();
        s += x;
    }
    return s.coords()[0];
}

// ---- polynomials over F_q and root finding ---------------------------------

namespace {

using PolyQ = std::vector<FqElem>;

void trim(PolyQ& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

PolyQ make_monic(PolyQ a) {
    trim(a);
    if (a.empty()) return a;
    const FqElem inv = a.back().inverse();
    for (auto& c : a) c *= inv;
    return a;
}

PolyQ q_mod(PolyQ a, const PolyQ& m) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const FqElem inv_lead = m.back().inverse();
    while (a.size() > dm) {
        const FqElem f = a.back() * inv_lead;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] -= f * m[j];
        trim(a);
    }
    return a;
}

PolyQ q_mulmod(const PolyQ& a, const PolyQ& b, const PolyQ& m) {
    if (a.empty() || b.empty()) return {};
    const FieldSpec& F = m.front().field();
    PolyQ r(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return q_mod(std::move(r), m);
}

PolyQ q_powmod(PolyQ base, mpz_class e, const PolyQ& m) {
    const FieldSpec& F = m.front().field();
    PolyQ r{F.one()};
    base = q_mod(std::move(base), m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = q_mulmod(r, base, m);
        e >>= 1;
        if (e > 0) base = q_mulmod(base, base, m);
    }
    return r;
}

PolyQ q_gcd(PolyQ a, PolyQ b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        PolyQ r = q_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a));
}

PolyQ q_sub(PolyQ a, const PolyQ& b) {
    const FieldSpec& F = (a.empty() ? b : a).front().field();
    if (a.size() < b.size()) a.resize(b.size(), F.zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Exact division by a monic divisor.
PolyQ q_div(PolyQ a, const PolyQ& d) {
    const FieldSpec& F = d.front().field();
    trim(a);
    const std::size_t dd = d.size() - 1;
    if (a.size() <= dd) return {};
    PolyQ quo(a.size() - dd, F.zero());
    while (a.size() > dd) {
        const FqElem f = a.back();
        const std::size_t shift = a.size() - 1 - dd;
        quo[shift] = f;
        for (std::size_t j = 0; j <= dd; ++j) a[shift + j] -= f * d[j];
        trim(a);
    }
    return quo;
}

FqElem random_elem(const FieldSpec& F, std::mt19937_64& rng) {
    std::vector<u64> c(F.m());
    std::uniform_int_distribution<u64> dist(0, F.p() - 1);
    for (auto& x : c) x = dist(rng);
    return F.from_coords(std::move(c));
}

void split_linear(const PolyQ& g, const FieldSpec& F, std::mt19937_64& rng, std::vector<FqElem>& out) {
    const std::size_t deg = g.size() - 1;
    if (deg == 0) return;
    if (deg == 1) {
        out.push_back(-g[0]);
        return;
    }
    const mpz_class Q = F.q_big();
    for (int attempt = 0; attempt < 256; ++attempt) {
        const FqElem delta = random_elem(F, rng);
        PolyQ h;
        if (F.p() == 2) {
            // Absolute trace of delta*X: sum_{i < m} (delta X)^{2^i} mod g.
            PolyQ y = q_mod(PolyQ{F.zero(), delta}, g);
            PolyQ acc = y;
            for (unsigned i = 1; i < F.m(); ++i) {
                y = q_mulmod(y, y, g);
                if (acc.size() < y.size()) acc.resize(y.size(), F.zero());
                for (std::size_t j = 0; j < y.size(); ++j) acc[j] += y[j];
                trim(acc);
            }
            h = q_gcd(g, acc);
        } else {
            PolyQ pw = q_powmod(PolyQ{delta, F.one()}, mpz_class((Q - 1) / 2), g);
            h = q_gcd(g, q_sub(pw, PolyQ{F.one()}));
        }
        if (h.size() > 1 && h.size() < g.size()) {
            split_linear(h, F, rng, out);
            split_linear(q_div(g, h), F, rng, out);
            return;
        }
    }
    throw Error(ErrorCode::Internal, "equal-degree splitting did not converge");
}

}  // namespace

std::vector<FqElem> roots_in(const std::vector<FqElem>& poly, const FieldSpec& field) {
    PolyQ f = make_monic(poly);
    if (f.empty()) throw Error(ErrorCode::InvalidInput, "roots of the zero polynomial");
    for (const auto& c : f) {
        if (!(c.field() == field)) throw Error(ErrorCode::InvalidInput, "coefficients outside the field");
    }
    std::vector<FqElem> roots;
    if (f.size() == 1) return roots;
    if (f[0].is_zero()) {
        roots.push_back(field.zero());
        std::size_t k = 0;
        while (f[k].is_zero()) ++k;
        f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k));
    }
    if (f.size() > 1) {
        // Distinct nonzero roots: gcd with X^{q-1} - 1.
        PolyQ xq1 = q_powmod(PolyQ{field.zero(), field.one()}, mpz_class(field.q_big() - 1), f);
        PolyQ g = q_gcd(f, q_sub(xq1, PolyQ{field.one()}));
        std::mt19937_64 rng(0x5eed1234abcdULL);
        split_linear(g, field, rng, roots);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---- embeddings -------------------------------------------------------------

namespace {

std::mutex embed_mutex;
std::map<std::tuple<u64, PolyP, PolyP>, std::vector<u64>>& embed_cache() {
    static std::map<std::tuple<u64, PolyP, PolyP>, std::vector<u64>> c;
    return c;
}

// Evaluate a (as a polynomial in the source generator) at r.
FqElem evaluate_at(const FqElem& a, const FqElem& r) {
    const FieldSpec& T = r.field();
    FqElem acc = T.zero();
    const auto c = a.coords();
    for (std::size_t i = c.size(); i-- > 0;) {
        acc *= r;
        acc += T.from_coords({c[i]});
    }
    return acc;
}

std::vector<FqElem> lifted_roots(const FieldSpec& source, const FieldSpec& target) {
    PolyQ h;
    for (u64 c : source.modulus()) h.push_back(target.from_coords({c}));
    return roots_in(h, target);
}

FqElem canonical_image(u64 p, unsigned e, unsigned d);

FqElem canonical_embed(const FqElem& a, unsigned d) {
    const unsigned e = a.field().m();
    const FieldSpec T = FieldSpec::make(a.field().p(), d);
    if (e == 1) return T.from_coords({a.coords()[0]});
    if (e == d) return a;
    return evaluate_at(a, canonical_image(a.field().p(), e, d));
}

// Image of the generator of F_{p^e} in F_{p^d} under a compatible system of
// embeddings. Non-maximal steps factor through e * (smallest prime of d/e);
// maximal steps pick the smallest root agreeing with the smaller maximal
// subfields of F_{p^d} on their common subfields.
FqElem canonical_image(u64 p, unsigned e, unsigned d) {
    const FieldSpec S = FieldSpec::make(p, e);
    const FieldSpec T = FieldSpec::make(p, d);
    if (e == d) return T.gen();
    if (e == 1) return T.zero();
    const auto key = std::make_tuple(p, S.modulus(), T.modulus());
    {
        std::lock_guard lock(embed_mutex);
        auto it = embed_cache().find(key);
        if (it != embed_cache().end()) return T.from_coords(it->second);
    }
    const unsigned k = d / e;
    const unsigned ell = static_cast<unsigned>(prime_factors(k).front());
    FqElem result = T.zero();
    if (ell != k) {
        const unsigned mid = e * ell;
        result = canonical_embed(canonical_image(p, e, mid), d);
    } else {
        std::vector<unsigned> smaller;
        for (u64 r : prime_factors(d)) {
            const unsigned other = d / static_cast<unsigned>(r);
            if (other < e) smaller.push_back(other);
        }
        bool found = false;
        for (const FqElem& root : lifted_roots(S, T)) {
            bool ok = true;
            for (unsigned other : smaller) {
                const unsigned g = std::gcd(e, other);
                if (g == 1) continue;
                const FqElem via_e = evaluate_at(canonical_image(p, g, e), root);
                const FqElem via_other = canonical_embed(canonical_image(p, g, other), d);
                if (!(via_e == via_other)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                result = root;
                found = true;
                break;
            }
        }
        if (!found) throw Error(ErrorCode::Internal, "no compatible embedding root");
    }
    std::lock_guard lock(embed_mutex);
    embed_cache().emplace(key, std::vector<u64>(result.coords().begin(), result.coords().end()));
    return result;
}

void check_extension(const FieldSpec& source, const FieldSpec& target) {
    if (source.p() != target.p()) {
        throw Error(ErrorCode::IncompatibleCharacteristic, "characteristics differ");
    }
    if (target.m() % source.m() != 0) {
        throw Error(ErrorCode::NotAnExtension, "degree " + std::to_string(source.m()) + " does not divide " +
                                                   std::to_string(target.m()));
    }
}

}  // namespace

FqElem generator_image(const FieldSpec& source, const FieldSpec& target) {
    check_extension(source, target);
    if (source == target) return target.gen();
    if (source.m() == 1) return target.zero();
    if (source.is_canonical() && target.is_canonical()) return canonical_image(source.p(), source.m(), target.m());
    const auto key = std::make_tuple(source.p(), source.modulus(), target.modulus());
    {
        std::lock_guard lock(embed_mutex);
        auto it = embed_cache().find(key);
        if (it != embed_cache().end()) return target.from_coords(it->second);
    }
    const auto roots = lifted_roots(source, target);
    if (roots.empty()) throw Error(ErrorCode::Internal, "modulus has no root in the extension");
    std::lock_guard lock(embed_mutex);
    embed_cache().emplace(key, std::vector<u64>(roots.front().coords().begin(), roots.front().coords().end()));
    return roots.front();
}

FqElem embed(const FqElem& a, const FieldSpec& target) {
    const FieldSpec& source = a.field();
    check_extension(source, target);
    if (source == target) return a;
    if (source.m() == 1) return target.from_coords({a.coords()[0]});
    return evaluate_at(a, generator_image(source, target));
}

// ---- torus enumeration ------------------------------------------------------

TorusEnumeration::TorusEnumeration(FieldSpec field, unsigned n, u64 budget) : field_(std::move(field)), n_(n) {
    const u64 q = field_.order();
    if (q > kDefaultEnumerableFieldBound) {
        throw Error(ErrorCode::BudgetExceeded, "field of order " + std::to_string(q) + " exceeds the enumerable bound");
    }
    axis_ = q - 1;
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), axis_, n_);
    if (count > mpz_class(std::to_string(budget))) {
        throw Error(ErrorCode::BudgetExceeded,
                    "torus enumeration needs " + count.get_str() + " points, budget is " + std::to_string(budget));
    }
    size_ = std::stoull(count.get_str());
}

std::vector<u64> TorusEnumeration::exponents_at(u64 index) const {
    std::vector<u64> e(n_, 0);
    for (unsigned i = n_; i-- > 0;) {
        e[i] = index % axis_;
        index /= axis_;
    }
    return e;
}

std::vector<FqElem> TorusEnumeration::at(u64 index) const {
    const FqElem g = field_.primitive();
    std::vector<FqElem> pt;
    pt.reserve(n_);
    for (u64 e : exponents_at(index)) pt.push_back(g.pow(e));
    return pt;
}

std::vector<std::pair<u64, u64>> TorusEnumeration::partition(unsigned parts) const {
    if (parts == 0) parts = 1;
    std::vector<std::pair<u64, u64>> out;
    const u64 base = size_ / parts;
    const u64 extra = size_ % parts;
    u64 begin = 0;
    for (unsigned i = 0; i < parts; ++i) {
        const u64 len = base + (i < extra ? 1 : 0);
        if (len) out.emplace_back(begin, begin + len);
        begin += len;
    }
    return out;
}

}  // namespace arithlg
