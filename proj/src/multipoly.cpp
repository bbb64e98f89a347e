#include "arithlg/multipoly.hpp"

#include <algorithm>

namespace arithlg {

MPoly MPoly::constant(unsigned nvars, const mpq_class& c) {
    MPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

MPoly MPoly::variable(unsigned nvars, unsigned i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(nvars, std::move(e), 1);
}

MPoly MPoly::monomial(unsigned nvars, Exponent e, const mpq_class& c) {
    if (e.size() != nvars) throw Error(ErrorCode::InvalidInput, "exponent of the wrong length");
    MPoly p(nvars);
    p.add_term(e, c);
    return p;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                                                 [](unsigned e) { return e == 0; }));
}

mpq_class MPoly::constant_term() const {
    auto it = terms_.find(Exponent(nvars_, 0));
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void MPoly::add_term(const Exponent& e, const mpq_class& c) {
    if (e.size() != nvars_) throw Error(ErrorCode::InvalidInput, "exponent of the wrong length");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (unsigned i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly operator*(MPoly a, const mpq_class& s) {
    if (s == 0) return MPoly(a.nvars_);
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
}

MPoly MPoly::derivative(unsigned i) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponent f = e;
        --f[i];
        r.add_term(f, c * e[i]);
    }
    return r;
}

int MPoly::valuation(unsigned i) const {
    int v = INT_MAX;
    for (const auto& [e, c] : terms_) v = std::min(v, static_cast<int>(e[i]));
    return v;
}

int MPoly::degree(unsigned i) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
    return d;
}

MPoly MPoly::divided_by_power(unsigned i, unsigned k) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] < k) throw Error(ErrorCode::Internal, "division by a power that does not divide");
        Exponent f = e;
        f[i] -= k;
        r.terms_.emplace(std::move(f), c);
    }
    return r;
}

MPoly MPoly::times_power(unsigned i, unsigned k) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        f[i] += k;
        r.terms_.emplace(std::move(f), c);
    }
    return r;
}

MPoly MPoly::at_zero(unsigned i) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_)
        if (e[i] == 0) r.terms_.emplace(e, c);
    return r;
}

MPoly MPoly::negated_var(unsigned i) const {
    MPoly r = *this;
    for (auto& [e, c] : r.terms_)
        if (e[i] % 2) c = -c;
    return r;
}

MPoly MPoly::reversed(unsigned i, unsigned d) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        f[i] = d - e[i];
        r.terms_.emplace(std::move(f), c);
    }
    return r;
}

Exponent MPoly::monomial_content() const {
    if (terms_.empty()) return Exponent(nvars_, 0);
    Exponent g = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        for (unsigned i = 0; i < nvars_; ++i) g[i] = std::min(g[i], e[i]);
    return g;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw Error(ErrorCode::InvalidInput, "division by the zero polynomial");
    MPoly r = a;
    MPoly q(a.nvars_);
    const auto& [lb, cb] = *b.terms_.rbegin();
    while (!r.is_zero()) {
        const auto& [lr, cr] = *r.terms_.rbegin();
        Exponent e(a.nvars_);
        for (unsigned i = 0; i < a.nvars_; ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            e[i] = lr[i] - lb[i];
        }
        const MPoly step = monomial(a.nvars_, e, cr / cb);
        q += step;
        r -= step * b;
    }
    return q;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool unit = std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
        std::string mono;
        for (unsigned i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names.at(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        mpq_class mag = abs(c);
        std::string term = unit ? mag.get_str() : (mag == 1 ? mono : mag.get_str() + "*" + mono);
        if (s.empty()) {
            s = (c < 0 ? "-" : "") + term;
        } else {
            s += (c < 0 ? " - " : " + ") + term;
        }
    }
    return s;
}

RatFunc::RatFunc(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.nvars(), 1)) {}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::InvalidInput, "zero denominator");
    if (num_.nvars() != den_.nvars()) throw Error(ErrorCode::InvalidInput, "numerator and denominator variables differ");
    normalize();
}

void RatFunc::normalize() {
    const unsigned n = num_.nvars();
    if (num_.is_zero()) {
        den_ = MPoly::constant(n, 1);
        return;
    }
    const Exponent gn = num_.monomial_content(), gd = den_.monomial_content();
    for (unsigned i = 0; i < n; ++i) {
        const unsigned k = std::min(gn[i], gd[i]);
        if (k) {
            num_ = num_.divided_by_power(i, k);
            den_ = den_.divided_by_power(i, k);
        }
    }
    if (!den_.is_constant()) {
        if (auto q = MPoly::divide_exact(num_, den_)) {
            num_ = std::move(*q);
            den_ = MPoly::constant(n, 1);
        } else if (!num_.is_constant()) {
            if (auto q2 = MPoly::divide_exact(den_, num_)) {
                num_ = MPoly::constant(n, 1);
                den_ = std::move(*q2);
            }
        }
    }
    const mpq_class lead = den_.terms().rbegin()->second;
    if (lead != 1) {
        num_ = num_ * mpq_class(1 / lead);
        den_ = den_ * mpq_class(1 / lead);
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(a.nvars());
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error(ErrorCode::InvalidInput, "division by the zero function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFunc RatFunc::derivative(unsigned i) const {
    if (den_.is_constant()) return RatFunc(num_.derivative(i), den_);
    return RatFunc(num_.derivative(i) * den_ - num_ * den_.derivative(i), den_ * den_);
}

int RatFunc::valuation(unsigned i) const {
    if (num_.is_zero()) return INT_MAX;
    return num_.valuation(i) - den_.valuation(i);
}

RatFunc RatFunc::at_zero(unsigned i) const {
    if (num_.is_zero()) return *this;
    if (valuation(i) < 0) throw Error(ErrorCode::NotMeromorphicAlongT, "function has a pole along the divisor");
    const auto k = static_cast<unsigned>(den_.valuation(i));
    return RatFunc(num_.divided_by_power(i, k).at_zero(i), den_.divided_by_power(i, k).at_zero(i));
}

RatFunc RatFunc::times_power(unsigned i, int k) const {
    if (k >= 0) return RatFunc(num_.times_power(i, static_cast<unsigned>(k)), den_);
    return RatFunc(num_, den_.times_power(i, static_cast<unsigned>(-k)));
}

RatFunc RatFunc::negated_var(unsigned i) const { return RatFunc(num_.negated_var(i), den_.negated_var(i)); }

RatFunc RatFunc::inverted_var(unsigned i) const {
    if (num_.is_zero()) return *this;
    const auto dn = static_cast<unsigned>(num_.degree(i)), dd = static_cast<unsigned>(den_.degree(i));
    return RatFunc(num_.reversed(i, dn).times_power(i, dd), den_.reversed(i, dd).times_power(i, dn));
}

std::string RatFunc::to_string(const std::vector<std::string>& names) const {
    if (den_.is_constant()) return num_.to_string(names);
    return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

std::vector<std::string> default_var_names(unsigned nvars) {
    std::vector<std::string> names{"t"};
    for (unsigned i = 1; i < nvars; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

}  // namespace arithlg
