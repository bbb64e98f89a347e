#include "arithlg/acceptance.hpp"

#include "arithlg/connalg.hpp"
#include "arithlg/expsum.hpp"
#include "arithlg/filtration_search.hpp"
#include "arithlg/frobdata.hpp"
#include "arithlg/fts_sampler.hpp"
#include "arithlg/json_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

namespace arithlg {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    std::vector<std::string> failures;
    std::string summary;
    // Exact values only, compared across partition counts by criterion 9.
    std::string fingerprint;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    bool pass() const { return failures.empty(); }
    std::string detail() const {
        if (pass()) return summary;
        std::string s;
        for (const auto& f : failures) s += (s.empty() ? "" : "; ") + f;
        return s;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// f = t + 1/t, optionally deformed by the constant monomial.
Deformation kloosterman(const FieldSpec& F, bool constant_direction) {
    LaurentPoly f = laurent_from_terms(F, 1, {{1, {1}}, {1, {-1}}});
    std::vector<LaurentPoly> dirs;
    if (constant_direction) dirs.push_back(laurent_from_terms(F, 1, {{1, {0}}}));
    return make_deformation(std::move(f), std::move(dirs), DeformationKind::Subdiagram);
}

Deformation mirror_p2(const FieldSpec& F) {
    return make_deformation(laurent_from_terms(F, 2, {{1, {1, 0}}, {1, {0, 1}}, {1, {-1, -1}}}), {},
                            DeformationKind::Subdiagram);
}

FrobeniusReport frobenius_at_one(const Deformation& D, unsigned threads) {
    FrobeniusOptions opts;
    opts.sums.threads = threads;
    return frobenius_report(D, {}, field_of(D.base).one(), opts);
}

std::string exact_fingerprint(const FrobeniusReport& r) {
    std::string s = to_json(r.char_poly).dump();
    for (const auto& z : r.power_sums) s += to_json(z).dump();
    return s;
}

// T^r P(Q/T) = P(0) conj_{-1}(P)(T), coefficient by coefficient, with Q = q^n.
bool dual_up_to_constant(const CycloPoly& P, const mpq_class& Q) {
    const auto r = static_cast<std::size_t>(P.degree());
    const CycloNum a0 = P.coeff(0);
    mpq_class Qpow = 1;
    std::vector<mpq_class> powers(r + 1);
    for (std::size_t i = 0; i <= r; ++i, Qpow *= Q) powers[i] = Qpow;
    for (std::size_t j = 0; j <= r; ++j)
        if (!(P.coeff(r - j) * powers[r - j] == a0 * conj_sigma(P.coeff(j), -1))) return false;
    return true;
}

Outcome criterion_kloosterman_purity(unsigned threads) {
    Outcome o;
    const FieldSpec F = FieldSpec::make(5, 1);
    const FrobeniusReport rep = frobenius_at_one(kloosterman(F, false), threads);
    const CycloPoly& P = rep.char_poly;
    o.require(P.degree() == 2 && P.is_monic(), "P is not a monic quadratic: " + P.to_string());
    o.require(P.degree() == 2 && P.coeff(0) == CycloNum::rational(5, 5), "P(0) = " + P.coeff(0).to_string() + ", expected 5");
    o.require(!rep.power_sums.empty() && rep.power_sums[0] == CycloNum(5, {-2, 0, -1, -1}),
              "p_1 differs from -(2 + z^2 + z^3)");

    // Roots from the quadratic formula, independently of the report's solver.
    const double target = std::sqrt(5.0);
    double worst = 0;
    std::size_t embeddings = 0;
    if (P.degree() == 2) {
        for (auto a : embedding_indices(5)) {
            const auto c = P.embedded(a);
            const auto disc = std::sqrt(c[1] * c[1] - 4.0 * c[0]);
            for (const auto root : {(-c[1] + disc) / 2.0, (-c[1] - disc) / 2.0})
                worst = std::max(worst, std::abs(std::abs(root) - target) / target);
            ++embeddings;
        }
    }
    o.require(embeddings == 4, "expected 4 complex embeddings");
    o.require(worst < kPurityTolerance, "relative deviation from sqrt 5 is " + fmt("%.3g", worst));
    o.require(rep.purity_ok, "report marks purity as failed");
    o.summary = "P = " + P.to_string() + ", max | |alpha|/sqrt5 - 1 | = " + fmt("%.2g", worst) + " over 4 embeddings";
    o.fingerprint = exact_fingerprint(rep);
    return o;
}

Outcome criterion_rank_volume(unsigned threads) {
    Outcome o;
    const FieldSpec F = FieldSpec::make(3, 1);
    const Deformation D = mirror_p2(F);
    const std::uint64_t vol = normalized_volume(newton_polyhedron_of(D.base));
    o.require(vol == 3, "normalized volume " + std::to_string(vol) + ", expected 3");
    const FrobeniusReport rep = frobenius_at_one(D, threads);
    const CycloPoly& P = rep.char_poly;
    o.require(rep.rank == 3 && P.degree() == 3, "characteristic polynomial of degree " + std::to_string(P.degree()));
    o.require(rep.power_sums.size() == 6 && validate_power_sums(P, rep.power_sums), "power sums p_4..p_6 fail the recurrence");

    double worst = 0, det = 0;
    for (const auto& e : rep.embeddings) {
        for (const auto& a : e.roots) worst = std::max(worst, std::abs(std::abs(a) - 3.0) / 3.0);
        det = std::max(det, std::abs(std::abs(embed_complex(P.coeff(0), e.index)) - 27.0) / 27.0);
    }
    o.require(rep.embeddings.size() == 2, "expected 2 complex embeddings");
    o.require(worst < kPurityTolerance, "relative deviation from 3 is " + fmt("%.3g", worst));
    o.require(det < kPurityTolerance, "|P(0)| deviates from 27 by " + fmt("%.3g", det));
    o.summary = "vol = 3, P = " + P.to_string() + ", max | |alpha|/3 - 1 | = " + fmt("%.2g", worst);
    o.fingerprint = exact_fingerprint(rep);
    return o;
}

Outcome criterion_duality(unsigned threads) {
    Outcome o;
    const FrobeniusReport k = frobenius_at_one(kloosterman(FieldSpec::make(5, 1), false), threads);
    const FrobeniusReport m = frobenius_at_one(mirror_p2(FieldSpec::make(3, 1)), threads);
    o.require(dual_up_to_constant(k.char_poly, 5), "t + 1/t over F_5: T^2 P(5/T) is not proportional to conj(P)");
    o.require(dual_up_to_constant(m.char_poly, 9), "t1 + t2 + 1/(t1 t2) over F_3: T^3 P(9/T) is not proportional to conj(P)");
    o.require(k.duality_ok && m.duality_ok, "a report marks duality as failed");
    o.summary = "exact coefficient match for both instances";
    o.fingerprint = exact_fingerprint(k) + exact_fingerprint(m);
    return o;
}

Outcome criterion_ramification(unsigned threads) {
    Outcome o;
    const FieldSpec F = FieldSpec::make(3, 1);
    const Deformation D = kloosterman(F, true);
    const std::vector<FqElem> x{F.zero()};
    SumOptions sums;
    sums.threads = threads;
    const LFunctionReport rep = family_l_function(D, x, 8, sums);
    o.require(rep.traces.size() == 8, "expected c_1..c_8");
    if (rep.traces.size() >= 2) {
        o.require(rep.traces[0] == 2, "c_1 = " + rep.traces[0].get_str() + ", expected 2");
        o.require(rep.traces[1] == -10, "c_2 = " + rep.traces[1].get_str() + ", expected -10");
    }
    o.require(rep.numerator == CycloPoly(3, {CycloNum::rational(3, 1), CycloNum::rational(3, 2), CycloNum::rational(3, -3)}),
              "L numerator is " + rep.numerator.to_string());
    o.require(rep.denominator == CycloPoly(3, {CycloNum::rational(3, 1)}), "L denominator is " + rep.denominator.to_string());
    o.require(rep.minus_chi_c == 2 && rep.rank == 2 && rep.swan_bound_ok, "-chi_c <= rank fails");

    // c_k = (-1)^n sum over tau of the family sum, enumerated directly.
    for (unsigned k = 1; k <= 2 && k <= rep.traces.size(); ++k) {
        const FieldSpec E = degree_k_field(F, k);
        CycloNum total(3);
        for (std::uint64_t code = 1; code < E.order(); ++code) total += family_sum(D, k, E.from_code(code), x, sums);
        o.require(total == CycloNum::rational(3, -mpq_class(rep.traces[k - 1])),
                  "double enumeration disagrees at k = " + std::to_string(k));
    }
    o.summary = "L = " + rep.numerator.to_string() + ", -chi_c = 2 <= rank 2, c_1 and c_2 cross-checked";
    for (const auto& c : rep.traces) o.fingerprint += c.get_str() + ",";
    o.fingerprint += to_json(rep.numerator).dump() + to_json(rep.denominator).dump();
    return o;
}

Outcome criterion_composition(unsigned threads) {
    Outcome o;
    SumOptions sums, inv;
    sums.threads = inv.threads = threads;
    inv.character = Character::PsiInverse;
    std::mt19937_64 rng(0x5eed5);
    std::size_t trials = 0;
    for (const FieldSpec& F : {FieldSpec::make(5, 1), FieldSpec::make(5, 2)}) {
        const Deformation D = kloosterman(F, true);
        const MonomialTable table = monomial_table(D);
        const std::uint64_t q = F.order();
        for (int i = 0; i < 50; ++i, ++trials) {
            const FqElem tau = F.from_code(1 + rng() % (q - 1));
            const std::vector<FqElem> x{F.from_code(rng() % q)};
            const CycloNum S = family_sum(D, 1, tau, x, sums);
            const CycloNum G = gkz_sum(table, phi_map(D, table, tau, x), sums);
            const std::string at = " at tau = " + element_to_string(tau) + ", x = " + element_to_string(x[0]);
            o.require(S == G, "family sum differs from the GKZ sum" + at);
            o.require(family_sum(D, 1, tau, x, inv) == family_sum(D, 1, -tau, x, sums), "S_psi^-1(tau) != S_psi(-tau)" + at);
            o.require(family_sum(D, 1, tau, x, inv) == conj_sigma(S, -1), "S_psi^-1(tau) != conj(S_psi(tau))" + at);
            o.fingerprint += to_json(S).dump();
        }
    }
    o.summary = std::to_string(trials) + " random points over F_5 and F_25, all identities exact";
    return o;
}

Outcome criterion_weil_bound(unsigned threads) {
    Outcome o;
    const FieldSpec F = FieldSpec::make(5, 2);
    const Deformation D = kloosterman(F, false);
    SumOptions sums;
    sums.threads = threads;
    const double bound = purity_bound(D, 1);
    o.require(std::abs(bound - 10.0) < 1e-12, "bound is " + fmt("%.6g", bound) + ", expected 10");
    double worst = 0;
    for (std::uint64_t code = 1; code < F.order(); ++code) {
        const CycloNum S = family_sum(D, 1, F.from_code(code), {}, sums);
        for (auto a : embedding_indices(5)) worst = std::max(worst, std::abs(embed_complex(S, a)));
        o.fingerprint += to_json(S).dump();
    }
    o.require(worst <= 10.0 + 1e-6, "max |S(tau)| = " + fmt("%.9g", worst) + " exceeds 10");
    o.summary = "max |S(tau)| over 24 values and 4 embeddings = " + fmt("%.6f", worst) + " <= 10";
    return o;
}

FTSTuple reference_tuple(long rinf_top) {
    const unsigned nv = 2;
    const auto c = [&](long v) { return RatFunc::constant(nv, v); };
    RMatrix Phi = r_zero(2, nv), R0 = r_identity(2, nv), Rinf = r_zero(2, nv);
    Phi[0][1] = c(1);
    Rinf[1][1] = c(rinf_top);
    return make_fts(2, 1, {r_zero(2, nv)}, {Phi}, R0, Rinf);
}

Outcome criterion_six_conditions() {
    Outcome o;
    std::mt19937_64 rng(20240607);
    int flat = 0, agree = 0;
    const int trials = 200;
    for (int i = 0; i < trials; ++i) {
        const std::size_t r = 1 + static_cast<std::size_t>(i % 3);
        const unsigned m = 1 + static_cast<unsigned>((i / 3) % 2);
        FTSTuple T = i % 4 == 3 ? random_fts(r, m, rng) : random_valid_fts(r, m, rng);
        if (i % 4 == 2) T = perturbed_fts(std::move(T), rng);
        const bool assembled = curvature(assemble_nabla(T)).is_zero();
        try {
            const FTSReport rep = verify_fts(T);
            if (rep.all_conditions == assembled) ++agree;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Internal) throw;
        }
        flat += assembled ? 1 : 0;
    }
    o.require(agree == trials, std::to_string(trials - agree) + " of " + std::to_string(trials) + " verdicts disagree");
    o.require(flat > 0 && flat < trials, "the sample does not contain both verdicts");

    const FTSReport pass = verify_fts(reference_tuple(1));
    const FTSReport fail = verify_fts(reference_tuple(2));
    o.require(pass.all_conditions && pass.assembled_flat, "Phi = E12 dx, R_0 = I, R_inf = diag(0,1) should pass");
    o.require(!fail.all_conditions && !fail.assembled_flat, "R_inf = diag(0,2) should fail");
    o.summary = std::to_string(agree) + "/" + std::to_string(trials) + " agree (" + std::to_string(flat) +
                " flat), reference pass and fail instances as expected";
    return o;
}

Outcome criterion_monodromy() {
    Outcome o;
    std::size_t checked = 0;
    for (int d = 1; d <= 3; ++d) {
        for (const auto& N : small_nilpotent_matrices(d)) {
            const auto found = exhaustive_monodromy_filtrations(N);
            if (found.size() != 1 || !(found[0] == monodromy_filtration(to_qmatrix(N)))) {
                o.require(false, "mismatch for a " + std::to_string(d) + "x" + std::to_string(d) + " matrix (" +
                                     std::to_string(found.size()) + " candidates found)");
            }
            ++checked;
        }
    }
    struct Jordan {
        const char* name;
        IntMatrix N;
        std::vector<std::pair<int, std::size_t>> graded;
    };
    const std::vector<Jordan> types = {
        {"(2)", {{0, 1}, {0, 0}}, {{-1, 1}, {1, 1}}},
        {"(2,1)", {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}, {{-1, 1}, {0, 1}, {1, 1}}},
        {"(3)", {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}, {{-2, 1}, {0, 1}, {2, 1}}},
    };
    for (const auto& J : types) {
        const Filtration M = monodromy_filtration(to_qmatrix(J.N));
        const auto found = exhaustive_monodromy_filtrations(J.N);
        bool ok = found.size() == 1 && found[0] == M;
        std::size_t total = 0;
        for (const auto& [k, dim] : J.graded) {
            ok = ok && M.graded_dim(k) == dim;
            total += dim;
        }
        o.require(ok && total == M.dim, std::string("Jordan type ") + J.name + " has the wrong filtration");
    }
    o.require(checked == 491, "expected 491 nilpotent matrices, enumerated " + std::to_string(checked));
    o.summary = std::to_string(checked) + " matrices and Jordan types (2), (2,1), (3) match the exhaustive search";
    return o;
}

struct Timed {
    Outcome outcome;
    double seconds = 0;
};

Timed timed(const std::function<Outcome()>& fn) {
    const auto start = Clock::now();
    Timed t;
    try {
        t.outcome = fn();
    } catch (const std::exception& e) {
        t.outcome.failures.push_back(std::string("threw ") + e.what());
    }
    t.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return t;
}

using Enumerated = Outcome (*)(unsigned);

struct EnumeratedCriterion {
    int id;
    const char* title;
    double limit;
    Enumerated run;
};

const EnumeratedCriterion kEnumerated[] = {
    {1, "Kloosterman purity", 1, criterion_kloosterman_purity},
    {2, "rank equals normalized volume", 30, criterion_rank_volume},
    {3, "duality pairing", 0, criterion_duality},
    {4, "ramification shadow", 5, criterion_ramification},
    {5, "composition identity", 0, criterion_composition},
    {6, "purity bound sweep", 5, criterion_weil_bound},
};

CriterionResult to_result(int id, const char* title, double limit, const Timed& t) {
    CriterionResult r;
    r.id = id;
    r.title = title;
    r.seconds = t.seconds;
    r.limit_seconds = limit;
    r.pass = t.outcome.pass() && (limit == 0 || t.seconds < limit);
    r.detail = t.outcome.detail();
    if (t.outcome.pass() && limit > 0 && t.seconds >= limit) r.detail = "over the time limit; " + r.detail;
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    const auto start = Clock::now();
    const unsigned threads = std::max(1u, opts.threads);
    std::vector<CriterionResult> out;
    std::vector<std::string> fingerprints;
    for (const auto& c : kEnumerated) {
        const Timed t = timed([&] { return c.run(threads); });
        fingerprints.push_back(t.outcome.fingerprint);
        out.push_back(to_result(c.id, c.title, c.limit, t));
    }
    out.push_back(to_result(7, "six-condition equivalence", 30, timed(criterion_six_conditions)));
    out.push_back(to_result(8, "monodromy filtration oracle", 0, timed(criterion_monodromy)));

    const Timed det = timed([&] {
        Outcome o;
        for (unsigned parts : {1u, 2u, 8u}) {
            if (parts == threads) continue;
            for (std::size_t i = 0; i < std::size(kEnumerated); ++i) {
                const Outcome again = kEnumerated[i].run(parts);
                o.require(again.fingerprint == fingerprints[i] && !again.fingerprint.empty(),
                          "criterion " + std::to_string(kEnumerated[i].id) + " changes with " + std::to_string(parts) +
                              " partitions");
            }
        }
        o.summary = "criteria 1-6 byte-identical with 1, 2 and 8 partitions";
        return o;
    });
    out.push_back(to_result(9, "determinism under parallelism", 0, det));

    CriterionResult total;
    total.id = 10;
    total.title = "suite runtime";
    total.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    total.limit_seconds = kSuiteTimeLimitSeconds;
    total.pass = total.seconds < kSuiteTimeLimitSeconds;
    total.detail = "whole suite";
    out.push_back(total);
    return out;
}

std::string format_result_line(const CriterionResult& r) {
    std::string s = r.pass ? "PASS  " : "FAIL  ";
    s += (r.id < 10 ? " " : "") + std::to_string(r.id) + "  " + r.title + "  (" + fmt("%.3f", r.seconds) + " s";
    if (r.limit_seconds > 0) s += ", limit " + fmt("%g", r.limit_seconds) + " s";
    s += ")";
    if (!r.detail.empty()) s += "  " + r.detail;
    return s;
}

}  // namespace arithlg
