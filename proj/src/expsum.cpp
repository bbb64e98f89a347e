#include "arithlg/expsum.hpp"

#include "arithlg/logtables.hpp"
#include "torus_scan.hpp"

#include <cmath>

namespace arithlg {

namespace {

FqElem lift(const FqElem& a, const FieldSpec& E) { return a.field() == E ? a : embed(a, E); }

std::vector<FqElem> lift_all(std::span<const FqElem> xs, const FieldSpec& E) {
    std::vector<FqElem> out;
    for (const auto& x : xs) out.push_back(lift(x, E));
    return out;
}

void scan_chunk(const LaurentPoly& L, const TorusEnumeration& torus, std::uint64_t begin, std::uint64_t end,
                bool use_tables, TraceHistogram& h) {
    const FieldSpec& E = torus.field();
    const auto monomials = L.support();
    if (use_tables) {
        const auto lt = LogTables::get(E);
        std::vector<std::uint32_t> cl;
        for (const auto& [w, c] : L.terms()) cl.push_back(lt->log(c));
        detail::LogOdometer odo(*lt, monomials, torus, begin);
        for (std::uint64_t idx = begin; idx < end; ++idx, odo.advance()) {
            const auto& d = odo.logs();
            std::uint32_t v = LogTables::kZero;
            for (std::size_t j = 0; j < cl.size(); ++j) v = lt->add(v, lt->mul(cl[j], d[j]));
            if (v == LogTables::kZero) {
                ++h.zeros;
            } else {
                ++h.counts[lt->trace(v)];
            }
        }
        return;
    }
    std::vector<FqElem> coeffs;
    for (const auto& [w, c] : L.terms()) coeffs.push_back(c);
    detail::ElemOdometer odo(monomials, torus, begin);
    for (std::uint64_t idx = begin; idx < end; ++idx, odo.advance()) {
        FqElem v = E.zero();
        for (std::size_t j = 0; j < coeffs.size(); ++j) v += coeffs[j] * odo.values()[j];
        if (v.is_zero()) {
            ++h.zeros;
        } else {
            ++h.counts[trace_to_prime(v)];
        }
    }
}

CycloNum to_cyclo(const TraceHistogram& h, std::uint64_t p, Character ch) {
    std::vector<std::int64_t> counts(p, 0);
    for (std::uint64_t a = 0; a < p; ++a) {
        const std::uint64_t idx = ch == Character::Psi ? a : (p - a) % p;
        counts[idx] += static_cast<std::int64_t>(h.counts[a]);
    }
    counts[0] += static_cast<std::int64_t>(h.zeros);
    return CycloNum::from_exponent_counts(p, counts);
}

LaurentPoly family_polynomial(const Deformation& D, const FieldSpec& E, const FqElem& tau, std::span<const FqElem> x) {
    const auto xe = lift_all(x, E);
    return specialize(D, xe, E).scaled(lift(tau, E));
}

}  // namespace

TraceHistogram trace_histogram(const LaurentPoly& L, const SumOptions& opts) {
    const FieldSpec& E = field_of(L);
    const TorusEnumeration torus(E, L.n(), opts.budget);
    // Tables and the primitive element are built once, before the workers start.
    const bool use_tables = opts.log_tables && LogTables::available(E);
    if (use_tables) {
        LogTables::get(E);
    } else {
        E.primitive();
    }
    const unsigned parts = std::max(1u, opts.threads);
    std::vector<TraceHistogram> partial(parts, TraceHistogram{std::vector<std::uint64_t>(E.p(), 0), 0});
    detail::run_partitioned(torus, parts, [&](std::size_t c, std::uint64_t b, std::uint64_t e) {
        scan_chunk(L, torus, b, e, use_tables, partial[c]);
    });
    TraceHistogram total{std::vector<std::uint64_t>(E.p(), 0), 0};
    for (const auto& h : partial) {
        for (std::size_t a = 0; a < h.counts.size(); ++a) total.counts[a] += h.counts[a];
        total.zeros += h.zeros;
    }
    return total;
}

CycloNum family_sum(const Deformation& D, unsigned k, const FqElem& tau, std::span<const FqElem> x,
                    const SumOptions& opts) {
    if (tau.is_zero()) throw Error(ErrorCode::ZeroTau, "tau must be nonzero");
    const FieldSpec E = degree_k_field(field_of(D.base), k);
    const LaurentPoly L = family_polynomial(D, E, tau, x);
    return to_cyclo(trace_histogram(L, opts), E.p(), opts.character);
}

CycloNum gkz_sum(const MonomialTable& table, std::span<const FqElem> y, const SumOptions& opts) {
    if (table.points.empty()) throw Error(ErrorCode::InvalidInput, "empty monomial table");
    if (y.size() != table.size()) {
        throw Error(ErrorCode::TableMismatch, "parameter vector has " + std::to_string(y.size()) +
                                                  " entries, table has " + std::to_string(table.size()));
    }
    const FieldSpec& E = y.front().field();
    LaurentPoly L(static_cast<unsigned>(table.points.front().size()), E.zero());
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (!(y[j].field() == E)) throw Error(ErrorCode::InvalidInput, "GKZ parameters in different fields");
        L.add_term(table.points[j], y[j]);
    }
    return to_cyclo(trace_histogram(L, opts), E.p(), opts.character);
}

std::uint64_t zero_count(const Deformation& D, unsigned k, std::span<const FqElem> x, const SumOptions& opts) {
    const FieldSpec E = degree_k_field(field_of(D.base), k);
    return trace_histogram(family_polynomial(D, E, E.one(), x), opts).zeros;
}

TauSummedTrace tau_summed_trace(const Deformation& D, unsigned k, std::span<const FqElem> x, const SumOptions& opts) {
    const FieldSpec E = degree_k_field(field_of(D.base), k);
    const unsigned n = D.n();
    TauSummedTrace out;
    out.zeros = zero_count(D, k, x, opts);
    const mpz_class qk = E.q_big();
    mpz_class torus;
    mpz_pow_ui(torus.get_mpz_t(), mpz_class(qk - 1).get_mpz_t(), n);
    const mpz_class orth = qk * mpz_class(std::to_string(out.zeros)) - torus;
    out.value = n % 2 == 0 ? orth : mpz_class(-orth);

    const mpz_class double_points = torus * (qk - 1);
    const std::uint64_t cap = std::min(kCrossCheckLimit, opts.budget);
    if (double_points <= mpz_class(std::to_string(cap))) {
        SumOptions inner = opts;
        inner.character = Character::Psi;
        CycloNum total(E.p());
        for (std::uint64_t code = 1; code < E.order(); ++code) total += family_sum(D, k, E.from_code(code), x, inner);
        if (!(total == CycloNum::rational(E.p(), mpq_class(orth)))) {
            throw Error(ErrorCode::Internal, "tau-summed enumeration " + total.to_string() +
                                                 " disagrees with the zero-count formula " + orth.get_str());
        }
        out.cross_checked = true;
    }
    return out;
}

double purity_bound(const Deformation& D, unsigned k) {
    const FieldSpec E = degree_k_field(field_of(D.base), k);
    const auto vol = normalized_volume(newton_polyhedron_of(D.base));
    return static_cast<double>(vol) * std::pow(E.q_big().get_d(), static_cast<double>(D.n()) / 2.0);
}

}  // namespace arithlg
