#include "arithlg/expsum.hpp"

#include "doctest.h"

#include <random>

using namespace arithlg;

namespace {

FqElem random_elem(const FieldSpec& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> d(0, F.order() - 1);
    return F.from_code(d(rng));
}

FqElem random_unit(const FieldSpec& F, std::mt19937_64& rng) {
    for (;;) {
        auto a = random_elem(F, rng);
        if (!a.is_zero()) return a;
    }
}

CycloNum Z(std::uint64_t p, std::int64_t k) { return CycloNum::zeta_power(p, k); }
CycloNum Q(std::uint64_t p, long v) { return CycloNum::rational(p, mpq_class(v)); }

// Every point of (E^*)^n, built without the odometer.
std::vector<std::vector<FqElem>> torus_points(const FieldSpec& E, unsigned n) {
    std::vector<std::vector<FqElem>> pts{{}};
    for (unsigned i = 0; i < n; ++i) {
        std::vector<std::vector<FqElem>> next;
        for (const auto& p : pts) {
            for (std::uint64_t c = 1; c < E.order(); ++c) {
                auto q = p;
                q.push_back(E.from_code(c));
                next.push_back(q);
            }
        }
        pts = std::move(next);
    }
    return pts;
}

// Direct sum of psi(tau F_x(t)) by pointwise evaluation and the trace map.
CycloNum oracle_family_sum(const Deformation& D, const FieldSpec& E, const FqElem& tau,
                           const std::vector<FqElem>& x) {
    const LaurentPoly F = specialize(D, x, E);
    CycloNum s(E.p());
    for (const auto& t : torus_points(E, D.n())) s += psi(tau * evaluate(F, t));
    return s;
}

Deformation kloosterman(const FieldSpec& F, bool with_constant) {
    auto f = laurent_from_terms(F, 1, {{1, {1}}, {1, {-1}}});
    std::vector<LaurentPoly> g;
    if (with_constant) g.push_back(laurent_from_terms(F, 1, {{1, {0}}}));
    return make_deformation(std::move(f), std::move(g), DeformationKind::Subdiagram);
}

Deformation random_deformation(const FieldSpec& F, unsigned n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> e(-2, 2);
    for (;;) {
        LaurentPoly f(n, F.zero());
        for (int i = 0; i < 4; ++i) {
            LatticePoint w(n);
            for (auto& c : w) c = e(rng);
            f.add_term(w, random_unit(F, rng));
        }
        if (f.is_zero() || newton_polyhedron_of(f).degenerate()) continue;
        const auto delta = newton_polyhedron_of(f);
        LaurentPoly g(n, F.zero());
        g.add_term(delta.vertices().front(), F.one());
        g.add_term(LatticePoint(n, 0), random_unit(F, rng));
        return make_deformation(f, {g}, DeformationKind::NewtonPreserving);
    }
}

}  // namespace

TEST_CASE("family_sum examples") {
    const auto F5 = FieldSpec::make(5, 1);
    const auto D = kloosterman(F5, false);
    const CycloNum kl = family_sum(D, 1, F5.one(), {});
    CHECK(kl == Q(5, 2) + Z(5, 2) + Z(5, 3));
    CHECK(embed_complex(kl, 1).real() == doctest::Approx(0.3819660).epsilon(1e-7));

    const auto t = laurent_from_terms(F5, 1, {{1, {1}}});
    const auto Dt = make_deformation(t, {}, DeformationKind::NewtonPreserving);
    CHECK(family_sum(Dt, 1, F5.one(), {}) == Q(5, -1));

    const auto Dz = make_deformation(t, {t}, DeformationKind::NewtonPreserving);
    const std::vector<FqElem> minus_one{F5.from_int(-1)};
    CHECK(family_sum(Dz, 1, F5.one(), minus_one) == Q(5, 4));
    CHECK(family_sum(Dz, 2, F5.one(), minus_one) == Q(5, 24));

    try {
        family_sum(D, 1, F5.zero(), {});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroTau);
    }
}

TEST_CASE("gkz_sum examples") {
    const auto F5 = FieldSpec::make(5, 1);
    const MonomialTable pm{{{1}, {-1}}};
    const std::vector<FqElem> ones{F5.one(), F5.one()};
    CHECK(gkz_sum(pm, ones) == Q(5, 2) + Z(5, 2) + Z(5, 3));
    const std::vector<FqElem> zeros{F5.zero(), F5.zero()};
    CHECK(gkz_sum(pm, zeros) == Q(5, 4));
    const MonomialTable single{{{1}}};
    const std::vector<FqElem> one{F5.one()};
    CHECK(gkz_sum(single, one) == Q(5, -1));
    const auto F9 = FieldSpec::make(3, 2);
    const MonomialTable plane{{{1, 0}, {0, 1}}};
    const std::vector<FqElem> zeros9{F9.zero(), F9.zero()};
    CHECK(gkz_sum(plane, zeros9) == Q(3, 64));
    CHECK_THROWS_AS(gkz_sum(pm, one), Error);
}

TEST_CASE("zero_count examples") {
    const auto F3 = FieldSpec::make(3, 1);
    const auto D = kloosterman(F3, false);
    CHECK(zero_count(D, 1, {}) == 0);
    CHECK(zero_count(D, 2, {}) == 2);
    CHECK(zero_count(D, 3, {}) == 0);
    CHECK(zero_count(D, 4, {}) == 2);
    const auto c = laurent_from_terms(F3, 1, {{1, {1}}});
    const auto Dc = make_deformation(c, {laurent_from_terms(F3, 1, {{1, {1}}})}, DeformationKind::NewtonPreserving);
    const std::vector<FqElem> m1{F3.from_int(-1)};
    CHECK(zero_count(Dc, 2, m1) == 8);
    const std::vector<FqElem> shift{F3.one()};
    const auto Dk = kloosterman(F3, true);
    // t + 1/t + 1 = 0 iff t^2 + t + 1 = (t - 1)^2 = 0 in characteristic 3.
    CHECK(zero_count(Dk, 1, shift) == 1);
}

TEST_CASE("tau_summed_trace examples") {
    const auto F3 = FieldSpec::make(3, 1);
    const auto D = kloosterman(F3, false);
    const auto c1 = tau_summed_trace(D, 1, {});
    CHECK(c1.value == 2);
    CHECK(c1.cross_checked);
    const auto c2 = tau_summed_trace(D, 2, {});
    CHECK(c2.value == -10);
    CHECK(c2.cross_checked);
    // Z_k = 0 gives (-1)^{n+1}(q^k - 1)^n.
    CHECK(tau_summed_trace(D, 3, {}).value == 26);
    // Closed-form oracle for more terms: c_k = -1 - (-3)^k.
    for (unsigned k = 1; k <= 8; ++k) {
        mpz_class expect;
        mpz_pow_ui(expect.get_mpz_t(), mpz_class(-3).get_mpz_t(), k);
        CHECK(tau_summed_trace(D, k, {}).value == -1 - expect);
    }
}

TEST_CASE("sums agree with pointwise evaluation") {
    std::mt19937_64 rng(41);
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{3, 1}, {5, 1}, {2, 2}, {7, 1}}) {
        const auto F = FieldSpec::make(p, m);
        for (unsigned n : {1u, 2u}) {
            for (int trial = 0; trial < 6; ++trial) {
                const auto D = random_deformation(F, n, rng);
                for (unsigned k : {1u, 2u}) {
                    if (n == 2 && F.order() > 4 && k == 2) continue;
                    const auto E = degree_k_field(F, k);
                    const FqElem tau = random_unit(E, rng);
                    const std::vector<FqElem> x{random_elem(E, rng)};
                    const auto expect = oracle_family_sum(D, E, tau, x);
                    CHECK(family_sum(D, k, tau, x) == expect);
                    SumOptions generic;
                    generic.log_tables = false;
                    CHECK(family_sum(D, k, tau, x, generic) == expect);
                }
            }
        }
    }
}

TEST_CASE("orthogonality over tau") {
    std::mt19937_64 rng(42);
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{3, 1}, {5, 1}, {2, 2}}) {
        const auto F = FieldSpec::make(p, m);
        for (int trial = 0; trial < 5; ++trial) {
            const auto D = random_deformation(F, 2, rng);
            const std::vector<FqElem> x{random_elem(F, rng)};
            CycloNum total(p);
            for (std::uint64_t c = 1; c < F.order(); ++c) total += oracle_family_sum(D, F, F.from_code(c), x);
            const auto z = zero_count(D, 1, x);
            const long q = static_cast<long>(F.order());
            CHECK(total == Q(p, q * static_cast<long>(z) - (q - 1) * (q - 1)));
            CHECK(tau_summed_trace(D, 1, x).cross_checked);
        }
    }
}

TEST_CASE("family_sum is gkz_sum composed with phi_map") {
    std::mt19937_64 rng(43);
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{5, 1}, {3, 1}, {2, 2}}) {
        const auto F = FieldSpec::make(p, m);
        const auto D = random_deformation(F, 2, rng);
        const auto Dk = kloosterman(F, true);
        for (const auto* dd : {&D, &Dk}) {
            const auto table = lattice_point_table(*dd);
            for (int trial = 0; trial < 50; ++trial) {
                const unsigned k = 1 + trial % 2;
                const auto E = degree_k_field(F, k);
                const FqElem tau = random_unit(E, rng);
                const std::vector<FqElem> x{random_elem(E, rng)};
                const auto y = phi_map(*dd, table, tau, x);
                CHECK(family_sum(*dd, k, tau, x) == gkz_sum(table, y));
            }
        }
    }
}

TEST_CASE("inverse character, conjugation and tau -> -tau agree") {
    std::mt19937_64 rng(44);
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{5, 1}, {5, 2}, {7, 1}, {3, 2}}) {
        const auto F = FieldSpec::make(p, m);
        const auto D = kloosterman(F, true);
        SumOptions inv;
        inv.character = Character::PsiInverse;
        for (int trial = 0; trial < 20; ++trial) {
            const FqElem tau = random_unit(F, rng);
            const std::vector<FqElem> x{random_elem(F, rng)};
            const auto s = family_sum(D, 1, tau, x);
            const auto s_inv = family_sum(D, 1, tau, x, inv);
            CHECK(s_inv == conj_sigma(s, -1));
            CHECK(s_inv == family_sum(D, 1, -tau, x));
        }
    }
}

TEST_CASE("sums are fixed by Frobenius on the parameters") {
    std::mt19937_64 rng(45);
    const auto F = FieldSpec::make(5, 1);
    const auto D = kloosterman(F, true);
    const auto E = degree_k_field(F, 2);
    for (int trial = 0; trial < 30; ++trial) {
        const FqElem tau = random_unit(E, rng);
        const std::vector<FqElem> x{random_elem(E, rng)};
        const std::vector<FqElem> xq{x[0].frobenius()};
        CHECK(family_sum(D, 2, tau, x) == family_sum(D, 2, tau.frobenius(), xq));
    }
    // Over F_9 with q = 9: the q-power map is the square of the p-power map.
    const auto F9 = FieldSpec::make(3, 2);
    const auto D9 = kloosterman(F9, true);
    const auto E81 = degree_k_field(F9, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const FqElem tau = random_unit(E81, rng);
        const std::vector<FqElem> x{random_elem(E81, rng)};
        const std::vector<FqElem> xq{x[0].frobenius().frobenius()};
        CHECK(family_sum(D9, 2, tau, x) == family_sum(D9, 2, tau.frobenius().frobenius(), xq));
    }
}

TEST_CASE("sums of nondegenerate families respect the Weil-type bound") {
    for (std::uint64_t p : {3u, 5u, 7u, 11u}) {
        const auto F = FieldSpec::make(p, 1);
        const auto D = kloosterman(F, false);
        for (unsigned k : {1u, 2u}) {
            const auto E = degree_k_field(F, k);
            const double bound = purity_bound(D, k);
            for (std::uint64_t c = 1; c < E.order(); ++c) {
                const auto s = family_sum(D, k, E.from_code(c), {});
                for (auto a : embedding_indices(p)) CHECK(std::abs(embed_complex(s, a)) <= bound + 1e-6);
            }
        }
    }
}

TEST_CASE("results do not depend on the partition count") {
    const auto F = FieldSpec::make(7, 1);
    const auto f = laurent_from_terms(F, 2, {{1, {1, 0}}, {2, {0, 1}}, {3, {-1, -1}}, {1, {1, 1}}});
    const auto D = make_deformation(f, {laurent_from_terms(F, 2, {{1, {0, 0}}})}, DeformationKind::Subdiagram);
    const auto E = degree_k_field(F, 2);
    const FqElem tau = E.gen() + E.one();
    const std::vector<FqElem> x{E.from_int(3)};
    SumOptions o;
    const auto base = family_sum(D, 2, tau, x, o);
    for (unsigned threads : {2u, 3u, 8u}) {
        o.threads = threads;
        CHECK(family_sum(D, 2, tau, x, o) == base);
        CHECK(zero_count(D, 2, x, o) == zero_count(D, 2, x));
    }
}

TEST_CASE("budget is enforced") {
    const auto F = FieldSpec::make(7, 1);
    const auto D = kloosterman(F, false);
    SumOptions tight;
    tight.budget = 100;
    CHECK_NOTHROW(family_sum(D, 2, F.one(), {}, tight));
    try {
        family_sum(D, 3, F.one(), {}, tight);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
}
