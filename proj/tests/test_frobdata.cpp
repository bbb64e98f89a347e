#include "arithlg/frobdata.hpp"
#include "arithlg/filtration_search.hpp"

#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace arithlg;

namespace {

CycloNum Z(std::uint64_t p, std::int64_t k) { return CycloNum::zeta_power(p, k); }
CycloNum Q(std::uint64_t p, long v) { return CycloNum::rational(p, mpq_class(v)); }

Deformation plain(LaurentPoly f) { return make_deformation(std::move(f), {}, DeformationKind::NewtonPreserving); }

CycloNum oracle_sum(const LaurentPoly& F, const FieldSpec& E) {
    CycloNum s(E.p());
    std::vector<FqElem> t(F.n(), E.one());
    std::vector<std::uint64_t> code(F.n(), 1);
    for (;;) {
        for (unsigned i = 0; i < F.n(); ++i) t[i] = E.from_code(code[i]);
        s += psi(evaluate(embedded(F, E), t));
        unsigned i = 0;
        while (i < F.n() && ++code[i] == E.order()) code[i++] = 1;
        if (i == F.n()) break;
    }
    return s;
}

CycloPoly poly(std::uint64_t p, std::initializer_list<long> c) {
    std::vector<CycloNum> v;
    for (long x : c) v.push_back(Q(p, x));
    return CycloPoly(p, v);
}

}  // namespace

TEST_CASE("stalk power sums carry the sign (-1)^n") {
    const auto F5 = FieldSpec::make(5, 1);
    const auto D = plain(laurent_from_terms(F5, 1, {{1, {1}}, {1, {-1}}}));
    const std::vector<FqElem> none;
    const auto ps = stalk_power_sums(D, none, F5.one(), 2);
    REQUIRE(ps.size() == 4);
    CHECK(ps[0] == -(Q(5, 2) + Z(5, 2) + Z(5, 3)));
    for (unsigned k = 1; k <= 2; ++k) CHECK(ps[k - 1] == -oracle_sum(D.base, degree_k_field(F5, k)));

    const auto F3 = FieldSpec::make(3, 1);
    const auto D2 = plain(laurent_from_terms(F3, 2, {{1, {1, 0}}, {1, {0, 1}}, {1, {-1, -1}}}));
    const auto ps2 = stalk_power_sums(D2, none, F3.one(), 1);
    CHECK(ps2[0] == oracle_sum(D2.base, F3));
    CHECK(ps2[1] == oracle_sum(D2.base, degree_k_field(F3, 2)));
}

TEST_CASE("Kloosterman Frobenius polynomial at p = 5") {
    const auto F5 = FieldSpec::make(5, 1);
    const auto D = plain(laurent_from_terms(F5, 1, {{1, {1}}, {1, {-1}}}));
    const std::vector<FqElem> none;
    const auto rep = frobenius_report(D, none, F5.one());
    CHECK(rep.rank == 2);
    CHECK(rep.q == 5);
    const CycloNum p1 = rep.power_sums[0];
    const CycloNum e2 = (p1 * p1 - rep.power_sums[1]) / mpq_class(2);
    CHECK(e2 == Q(5, 5));
    CHECK(rep.char_poly == CycloPoly(5, {Q(5, 5), -p1, Q(5, 1)}));
    CHECK(rep.purity_ok);
    CHECK(rep.max_purity_deviation < 1e-6);
    CHECK(rep.duality_ok);
    CHECK(rep.determinant_ok);
    CHECK(rep.embeddings.size() == 4);
    for (const auto& e : rep.embeddings)
        for (const auto& a : e.roots) CHECK(std::abs(std::abs(a) - std::sqrt(5.0)) < 1e-6);
    CHECK(rep.warnings.empty());
}

TEST_CASE("t1 + t2 + 1/(t1 t2) at p = 3 has rank 3") {
    const auto F3 = FieldSpec::make(3, 1);
    const auto D = plain(laurent_from_terms(F3, 2, {{1, {1, 0}}, {1, {0, 1}}, {1, {-1, -1}}}));
    const std::vector<FqElem> none;
    const auto rep = frobenius_report(D, none, F3.one());
    CHECK(rep.rank == 3);
    CHECK(rep.char_poly.degree() == 3);
    CHECK(rep.char_poly.is_monic());
    CHECK(rep.purity_ok);
    CHECK(rep.duality_ok);
    for (const auto& e : rep.embeddings) {
        CHECK(std::abs(std::abs(rep.char_poly.embedded(e.index).front()) - 27.0) < 27e-6);
        for (const auto& a : e.roots) CHECK(std::abs(std::abs(a) - 3.0) < 3e-6);
    }
}

TEST_CASE("random convenient one-variable polynomials are pure and self-dual") {
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {3u, 5u, 7u}) {
        const auto F = FieldSpec::make(p, 1);
        std::uniform_int_distribution<std::uint64_t> c(1, p - 1);
        for (int trial = 0; trial < 4; ++trial) {
            // Exponents -a..b with nonzero end coefficients and a + b <= 3.
            const int a = 1 + trial % 2, b = trial < 2 ? 1 : 2 - (trial % 2);
            std::vector<std::pair<std::int64_t, LatticePoint>> terms{{static_cast<std::int64_t>(c(rng)), {-a}},
                                                                     {static_cast<std::int64_t>(c(rng)), {b}}};
            if (a + b > 2) terms.push_back({static_cast<std::int64_t>(c(rng)), {1 - a}});
            LaurentPoly f = laurent_from_terms(F, 1, {});
            for (const auto& [co, w] : terms) f.add_term(w, make_elem(F, co));
            if (a % static_cast<int>(p) == 0 || b % static_cast<int>(p) == 0) continue;
            const auto D = plain(f);
            const std::vector<FqElem> none;
            const auto tau = F.from_code(c(rng));
            const auto rep = frobenius_report(D, none, tau);
            CHECK(rep.rank == static_cast<std::size_t>(a + b));
            CHECK(rep.purity_ok);
            CHECK(rep.duality_ok);
            CHECK(rep.determinant_ok);
        }
    }
}

TEST_CASE("a point over an extension is rebased to that field") {
    const auto F3 = FieldSpec::make(3, 1);
    const auto F9 = F3.extension(2);
    const auto D = plain(laurent_from_terms(F3, 1, {{1, {1}}, {1, {-1}}}));
    const std::vector<FqElem> none;
    const auto rep = frobenius_report(D, none, F9.primitive());
    CHECK(rep.q == 9);
    CHECK(rep.char_poly.coeff(0) == Q(3, 9));
    CHECK(rep.purity_ok);
    CHECK(rep.duality_ok);
}

TEST_CASE("a monomial base fails purity and says why") {
    // f = t: the sum over F_q^* is -1 for every k, so P = T - 1 whose root has
    // absolute value 1, not sqrt(q). The origin is a vertex of the Newton
    // polyhedron, which the report flags.
    const auto F5 = FieldSpec::make(5, 1);
    const auto D = plain(laurent_from_terms(F5, 1, {{1, {1}}}));
    const std::vector<FqElem> none;
    const auto rep = frobenius_report(D, none, F5.one());
    CHECK(rep.rank == 1);
    CHECK(rep.char_poly == poly(5, {-1, 1}));
    CHECK_FALSE(rep.purity_ok);
    CHECK_FALSE(rep.warnings.empty());
    FrobeniusOptions strict;
    strict.strict = true;
    try {
        frobenius_report(D, none, F5.one(), strict);
        FAIL("expected ToleranceExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ToleranceExceeded);
    }
    const auto L = family_l_function(D, none, 6);
    CHECK(L.numerator == poly(5, {1, -1}));
    CHECK(L.denominator == poly(5, {1, -5}));
    CHECK(L.minus_chi_c <= 1);
    CHECK(L.swan_bound_ok);
}

TEST_CASE("degenerate parameter is flagged while values are still computed") {
    // Over F_2 the edge polynomial t1 (t2 + 1/t2) has the torus critical point t2 = 1.
    const auto F2 = FieldSpec::make(2, 1);
    const auto f = laurent_from_terms(F2, 2, {{1, {1, 1}}, {1, {1, -1}}, {1, {-1, 0}}});
    const auto D = plain(f);
    const auto verdict = check_nondegenerate(f, newton_polyhedron_of(f), 2);
    CHECK(verdict.kind == NondegeneracyVerdict::Kind::DegenerateAt);
    const std::vector<FqElem> none;
    const auto ps = stalk_power_sums(D, none, F2.one(), 4);
    CHECK(ps.size() == 8);
    CHECK(ps[2] == oracle_sum(f, degree_k_field(F2, 3)));
    const auto rep = frobenius_report(D, none, F2.one());
    REQUIRE(rep.warnings.size() == 1);
    CHECK(rep.warnings[0].find("degenerate on a face") != std::string::npos);
    CHECK(rep.char_poly.degree() == 4);
}

TEST_CASE("rank cap and zero tau") {
    const auto F3 = FieldSpec::make(3, 1);
    const auto D = plain(laurent_from_terms(F3, 1, {{1, {2}}, {1, {-2}}}));
    const std::vector<FqElem> none;
    FrobeniusOptions tiny;
    tiny.max_rank = 3;
    CHECK_THROWS_AS(frobenius_report(D, none, F3.one(), tiny), Error);
    try {
        frobenius_report(D, none, F3.zero());
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroTau);
    }
}

TEST_CASE("L-function of the tau-family of t + 1/t at p = 3") {
    const auto F3 = FieldSpec::make(3, 1);
    const auto D = plain(laurent_from_terms(F3, 1, {{1, {1}}, {1, {-1}}}));
    const std::vector<FqElem> none;
    const auto rep = family_l_function(D, none, 8);
    // Reciprocal roots 1 and -3.
    for (unsigned k = 1; k <= 8; ++k) {
        mpz_class m3;
        mpz_pow_ui(m3.get_mpz_t(), mpz_class(3).get_mpz_t(), k);
        if (k % 2) m3 = -m3;
        CHECK(rep.traces[k - 1] == -1 - m3);
    }
    CHECK(rep.numerator == poly(3, {1, 2, -3}));
    CHECK(rep.denominator == poly(3, {1}));
    CHECK(rep.minus_chi_c == 2);
    CHECK(rep.rank == 2);
    CHECK(rep.swan_bound_ok);
    CHECK(rep.stable);
    CHECK(rep.recurrence_agrees);
    CHECK_FALSE(rep.non_lisse);
    CHECK_FALSE(rep.notes.empty());

    CHECK_THROWS_AS(family_l_function(D, none, 5), Error);
}

TEST_CASE("planted rational functions come back exactly") {
    // L = (1 - 2T)(1 + T) / (1 - 3T): c_k = 3^k - 2^k - (-1)^k.
    const std::uint64_t p = 7;
    std::vector<CycloNum> c;
    for (int k = 1; k <= 10; ++k) {
        const long v = std::lround(std::pow(3.0, k) - std::pow(2.0, k) - std::pow(-1.0, k));
        c.push_back(Q(p, v));
    }
    const auto rep = l_function_from_traces(c, 1);
    CHECK(rep.numerator == poly(p, {1, -1, -2}));
    CHECK(rep.denominator == poly(p, {1, -3}));
    CHECK(rep.minus_chi_c == 1);
    CHECK(rep.swan_bound_ok);
    CHECK(rep.stable);

    const std::vector<CycloNum> one{Q(p, 1)};
    try {
        l_function_from_traces(one, 1);
        FAIL("expected Unstable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unstable);
    }
}

TEST_CASE("a constant specialization is reported as non-lisse") {
    const auto F3 = FieldSpec::make(3, 1);
    const auto f = laurent_from_terms(F3, 1, {{1, {1}}, {1, {0}}});
    const auto g = laurent_from_terms(F3, 1, {{1, {1}}});
    const auto D = make_deformation(f, {g}, DeformationKind::NewtonPreserving);
    const std::vector<FqElem> x{make_elem(F3, -1)};
    const auto rep = family_l_function(D, x, 6);
    CHECK(rep.non_lisse);
    CHECK(rep.traces[0] == 2);
}

TEST_CASE("monodromy filtration of small Jordan types") {
    const auto zero = monodromy_filtration(q_zero(3, 3));
    CHECK(zero.at(-1).dim() == 0);
    CHECK(zero.at(0).dim() == 3);

    QMatrix J2 = q_zero(2, 2);
    J2[0][1] = 1;
    const auto m2 = monodromy_filtration(J2);
    CHECK(m2.graded_dim(-1) == 1);
    CHECK(m2.graded_dim(0) == 0);
    CHECK(m2.graded_dim(1) == 1);

    QMatrix J21 = q_zero(3, 3);
    J21[0][1] = 1;
    const auto m21 = monodromy_filtration(J21);
    CHECK(m21.graded_dim(-1) == 1);
    CHECK(m21.graded_dim(0) == 1);
    CHECK(m21.graded_dim(1) == 1);

    QMatrix J3 = q_zero(3, 3);
    J3[0][1] = 1;
    J3[1][2] = 1;
    const auto m3 = monodromy_filtration(J3);
    CHECK(m3.graded_dim(-2) == 1);
    CHECK(m3.graded_dim(0) == 1);
    CHECK(m3.graded_dim(2) == 1);
    CHECK(m3.graded_dim(1) == 0);

    QMatrix bad = q_identity(2);
    try {
        monodromy_filtration(bad);
        FAIL("expected NotNilpotent");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotNilpotent);
    }
}

TEST_CASE("monodromy filtration matches exhaustive search for every small nilpotent matrix") {
    std::size_t checked = 0;
    std::set<std::vector<std::size_t>> types;
    for (int d = 1; d <= 3; ++d) {
        for (const auto& N : small_nilpotent_matrices(d)) {
            const auto M = monodromy_filtration(to_qmatrix(N));
            const auto found = exhaustive_monodromy_filtrations(N);
            INFO("d = " << d << ", matrix " << checked);
            REQUIRE(found.size() == 1);
            CHECK(found[0] == M);
            std::vector<std::size_t> gr;
            for (int k = -d + 1; k <= d - 1; ++k) gr.push_back(M.graded_dim(k));
            types.insert(gr);
            ++checked;
        }
    }
    CHECK(checked == 491);
    CHECK(types.size() >= 4);
}

TEST_CASE("exhaustive search rejects non-filtrations") {
    // The kernel/image filtration shifted by one is not admissible.
    const IntMatrix J2{{0, 1}, {0, 0}};
    const auto found = exhaustive_monodromy_filtrations(J2);
    REQUIRE(found.size() == 1);
    Filtration shifted;
    shifted.dim = 2;
    for (const auto& [k, S] : found[0].jumps) shifted.jumps.emplace(k + 1, S);
    CHECK_FALSE(is_monodromy_filtration(to_qmatrix(J2), shifted));
    CHECK(is_monodromy_filtration(to_qmatrix(J2), found[0]));
}
