#include "arithlg/connalg.hpp"
#include "arithlg/fts_sampler.hpp"

#include "doctest.h"

#include <random>

using namespace arithlg;

namespace {

using QRows = std::vector<std::vector<mpq_class>>;

MPoly var(unsigned nv, unsigned i) { return MPoly::variable(nv, i); }
RatFunc rf(const MPoly& p) { return RatFunc(p); }
RatFunc cst(unsigned nv, long c) { return RatFunc::constant(nv, c); }

RMatrix E(std::size_t r, std::size_t i, std::size_t j, unsigned nv) {
    RMatrix m = r_zero(r, nv);
    m[i][j] = cst(nv, 1);
    return m;
}

RMatrix diag(const std::vector<long>& d, unsigned nv) {
    RMatrix m = r_zero(d.size(), nv);
    for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = cst(nv, d[i]);
    return m;
}

}  // namespace

TEST_CASE("curvature of simple forms") {
    MatForm zero(1, 2, 1);
    CHECK(curvature(zero).is_zero());

    MatForm Mdx(1, 2, 1);
    Mdx.component(1) = r_constant(QRows{{1, 2}, {3, 4}}, 2);
    CHECK(curvature(Mdx).is_zero());

    // x = x1, y = x2: A = E12 x dy + E21 y dx.
    const unsigned nv = 3;
    MatForm A(1, 2, 2);
    A.component(2) = r_scale(E(2, 0, 1, nv), rf(var(nv, 1)));
    A.component(1) = r_scale(E(2, 1, 0, nv), rf(var(nv, 2)));
    const MatForm F = curvature(A);
    const RatFunc xy = rf(var(nv, 1) * var(nv, 2));
    RMatrix expected = r_sub(E(2, 0, 1, nv), E(2, 1, 0, nv));
    expected = r_add(expected, r_scale(r_sub(E(2, 1, 1, nv), E(2, 0, 0, nv)), xy));
    CHECK(r_equal(F.component(1, 2), expected));
    CHECK(r_is_zero(F.component(0, 1)));
    CHECK(r_is_zero(F.component(0, 2)));
}

TEST_CASE("Poincare rank") {
    const unsigned nv = 2;
    const RatFunc t = rf(var(nv, 0));
    const RatFunc x = rf(var(nv, 1));
    const RatFunc inv_t = cst(nv, 1) / t;

    MatForm log(1, 2, 1);
    log.component(0) = r_scale(r_scale(diag({1, 2}, nv), x), inv_t);
    CHECK(poincare_rank(log) == 0);

    MatForm rank1(1, 2, 1);
    rank1.component(1) = r_scale(E(2, 0, 1, nv), inv_t);
    rank1.component(0) = r_scale(r_identity(2, nv), inv_t * inv_t);
    CHECK(poincare_rank(rank1) == 1);

    MatForm hol(1, 2, 1);
    hol.component(1) = r_constant(QRows{{0, 1}, {0, 0}}, nv);
    CHECK(poincare_rank(hol) == -1);

    MatForm deep(1, 1, 1);
    deep.component(1) = {{cst(nv, 1) / (t * t * t)}};
    CHECK(poincare_rank(deep) == 3);

    // A pole away from t = 0 does not count.
    MatForm away(1, 1, 1);
    away.component(1) = {{cst(nv, 1) / (t + cst(nv, 1))}};
    CHECK(poincare_rank(away) == -1);
}

TEST_CASE("logarithmic restriction and residue") {
    const unsigned nv = 2;
    const RatFunc inv_t = cst(nv, 1) / rf(var(nv, 0));
    MatForm A(1, 2, 1);
    const RMatrix C = r_constant(QRows{{1, 2}, {0, -1}}, nv);
    A.component(0) = r_scale(C, inv_t);
    const auto res = log_restriction(A);
    CHECK(r_equal(res.residue, C));
    CHECK(r_is_zero(res.restriction[0]));
    CHECK(res.residue_horizontal);
    CHECK(res.restriction_flat);

    MatForm bad(1, 2, 1);
    bad.component(0) = r_scale(diag({1, 0}, nv), rf(var(nv, 1)) * inv_t);
    try {
        log_restriction(bad);
        FAIL("expected NotFlat");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotFlat);
    }

    MatForm r1(1, 1, 1);
    r1.component(0) = {{inv_t * inv_t}};
    try {
        log_restriction(r1);
        FAIL("expected WrongRank");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WrongRank);
    }
}

TEST_CASE("assembly and the six conditions on the reference tuples") {
    const unsigned nv = 2;
    const RMatrix Z = r_zero(2, nv);
    const auto pass = make_fts(2, 1, {Z}, {E(2, 0, 1, nv)}, r_identity(2, nv), diag({0, 1}, nv));
    const MatForm A = assemble_nabla(pass);
    const RatFunc inv_t = cst(nv, 1) / rf(var(nv, 0));
    CHECK(r_equal(A.component(1), r_scale(E(2, 0, 1, nv), inv_t)));
    CHECK(r_equal(A.component(0), r_scale(r_sub(r_scale(r_identity(2, nv), inv_t), diag({0, 1}, nv)), inv_t)));
    CHECK(poincare_rank(A) == 1);
    const auto rep = verify_fts(pass);
    for (bool c : rep.conditions) CHECK(c);
    CHECK(rep.assembled_flat);

    const auto fail = make_fts(2, 1, {Z}, {E(2, 0, 1, nv)}, r_identity(2, nv), diag({0, 2}, nv));
    const auto rep2 = verify_fts(fail);
    CHECK_FALSE(rep2.conditions[5]);
    for (int i = 0; i < 5; ++i) CHECK(rep2.conditions[i]);
    CHECK_FALSE(rep2.assembled_flat);

    const auto zero = make_fts(2, 1, {Z}, {Z}, Z, Z);
    CHECK(assemble_nabla(zero).is_zero());
    const auto rep3 = verify_fts(zero);
    CHECK(rep3.all_conditions);
    CHECK(rep3.assembled_flat);
}

TEST_CASE("tuples with t in them or the wrong shape are rejected") {
    const unsigned nv = 2;
    const RMatrix Z = r_zero(2, nv);
    RMatrix with_t = Z;
    with_t[0][0] = rf(var(nv, 0));
    CHECK_THROWS_AS(make_fts(2, 1, {Z}, {Z}, with_t, Z), Error);
    CHECK_THROWS_AS(make_fts(2, 1, {Z}, {Z}, r_zero(3, nv), Z), Error);
    CHECK_THROWS_AS(make_fts(2, 2, {Z}, {Z}, Z, Z), Error);
    try {
        make_fts(2, 1, {Z}, {Z}, Z, Z, E(2, 0, 1, nv));
        FAIL("expected SingularMetric");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularMetric);
    }
}

TEST_CASE("rank-one restriction") {
    const unsigned nv = 2;
    const RMatrix Z = r_zero(2, nv);
    const auto T = make_fts(2, 1, {Z}, {E(2, 0, 1, nv)}, r_identity(2, nv), diag({0, 1}, nv));
    const auto res = rank1_restriction(assemble_nabla(T));
    CHECK(r_equal(res.phi[0], T.Phi[0]));
    CHECK(r_equal(res.r0, T.R0));

    const unsigned nv1 = 2;
    const auto scalar = make_fts(1, 1, {{{cst(nv1, 0)}}}, {{{rf(var(nv1, 1))}}},
                                 {{cst(nv1, 3) - RatFunc(var(nv1, 1) * var(nv1, 1)) / cst(nv1, 2)}}, {{cst(nv1, 0)}});
    CHECK(verify_fts(scalar).all_conditions);
    const auto sres = rank1_restriction(assemble_nabla(scalar));
    CHECK(sres.higgs);
    CHECK(sres.commutes);

    const auto bad = make_fts(2, 1, {Z}, {E(2, 0, 1, nv)}, r_identity(2, nv), diag({0, 2}, nv));
    try {
        rank1_restriction(assemble_nabla(bad));
        FAIL("expected NotFlat");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotFlat);
    }
}

TEST_CASE("metric conditions") {
    const unsigned nv = 2;
    const RMatrix Z = r_zero(2, nv);
    const auto plain = make_fts(2, 1, {Z}, {Z}, Z, Z, r_identity(2, nv));
    CHECK(verify_metric(plain).all());

    const auto skew = make_fts(2, 1, {Z}, {Z}, Z, r_constant(QRows{{0, 1}, {-1, 0}}, nv), r_identity(2, nv));
    CHECK(verify_metric(skew).rinf_skew_adjoint);

    const auto nonsym = make_fts(2, 1, {Z}, {Z}, E(2, 0, 1, nv), Z, r_identity(2, nv));
    CHECK_FALSE(verify_metric(nonsym).r0_self_adjoint);

    const auto none = make_fts(2, 1, {Z}, {Z}, Z, Z);
    CHECK_THROWS_AS(verify_metric(none), Error);
}

TEST_CASE("gauge transforms of the trivial connection are flat") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t r = 2 + trial % 2;
        const unsigned m = 1 + trial % 3 / 2;
        const unsigned nv = m + 1;
        auto [h, hinv] = random_unipotent(r, nv, true, rng);
        MatForm A(1, r, m);
        for (unsigned a = 0; a <= m; ++a) A.component(a) = r_mul(hinv, r_derivative(h, a));
        CHECK(curvature(A).is_zero());
    }
}

TEST_CASE("flat logarithmic connections have horizontal residues") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t r = 2 + trial % 2;
        const unsigned m = 1 + trial % 2;
        const unsigned nv = m + 1;
        RMatrix C = r_zero(r, nv);
        for (auto& row : C)
            for (auto& e : row) e = cst(nv, c(rng));
        auto [h, hinv] = random_unipotent(r, nv, true, rng);
        const RatFunc inv_t = cst(nv, 1) / rf(var(nv, 0));
        MatForm A(1, r, m);
        A.component(0) = r_add(r_scale(conjugate(hinv, C, h), inv_t), r_mul(hinv, r_derivative(h, 0)));
        for (unsigned a = 1; a <= m; ++a) A.component(a) = r_mul(hinv, r_derivative(h, a));
        REQUIRE(curvature(A).is_zero());
        const auto res = log_restriction(A);
        CHECK(res.restriction_flat);
        CHECK(res.residue_horizontal);
        RMatrix h0 = h, hinv0 = hinv;
        for (auto* M : {&h0, &hinv0})
            for (auto& row : *M)
                for (auto& e : row) e = e.at_zero(0);
        CHECK(r_equal(res.residue, conjugate(hinv0, C, h0)));
    }
}

TEST_CASE("six conditions hold exactly when the assembled connection is flat") {
    std::mt19937_64 rng(2024);
    int flat = 0, not_flat = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + static_cast<std::size_t>(trial % 3);
        const unsigned m = 1 + static_cast<unsigned>(trial / 3 % 2);
        FTSTuple T = trial % 4 == 3 ? random_fts(r, m, rng) : random_valid_fts(r, m, rng);
        if (trial % 4 == 2) T = perturbed_fts(T, rng);
        // verify_fts throws Internal on any disagreement between the two sides.
        const auto rep = verify_fts(T);
        CHECK(rep.all_conditions == rep.assembled_flat);
        (rep.assembled_flat ? flat : not_flat)++;
        if (trial % 4 < 2) {
            CHECK(rep.all_conditions);
            const auto back = rank1_restriction(assemble_nabla(T));
            for (unsigned i = 0; i < m; ++i) CHECK(r_equal(back.phi[i], T.Phi[i]));
            CHECK(r_equal(back.r0, T.R0));
            // At infinity the pole is logarithmic with residue R_inf and the
            // restriction is the flat part.
            const auto inf = log_restriction(to_s_chart(assemble_nabla(T)));
            CHECK(r_equal(inf.residue, T.Rinf));
            for (unsigned i = 0; i < m; ++i) CHECK(r_equal(inf.restriction[i], T.A[i]));
            CHECK(inf.residue_horizontal);
        }
    }
    CHECK(flat >= 100);
    CHECK(not_flat >= 40);
}

TEST_CASE("metric conditions match flatness of the pairing") {
    std::mt19937_64 rng(77);
    const unsigned nv = 2;
    const std::vector<RMatrix> metrics{r_identity(2, nv), r_constant(QRows{{0, 1}, {1, 0}}, nv),
                                       r_constant(QRows{{1, 0}, {0, 2}}, nv)};
    const std::vector<RMatrix> pool{r_zero(2, nv),
                                    E(2, 0, 1, nv),
                                    E(2, 1, 0, nv),
                                    r_identity(2, nv),
                                    diag({1, -1}, nv),
                                    r_constant(QRows{{0, 1}, {-1, 0}}, nv),
                                    r_constant(QRows{{0, 1}, {1, 0}}, nv),
                                    r_scale(E(2, 0, 1, nv), rf(var(nv, 1)))};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), gpick(0, metrics.size() - 1);
    int good = 0, bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto T = make_fts(2, 1, {pool[pick(rng)]}, {pool[pick(rng)]}, pool[pick(rng)], pool[pick(rng)],
                                metrics[gpick(rng)]);
        const bool conditions = verify_metric(T).all();
        CHECK(conditions == pairing_flat(assemble_nabla(T), *T.g));
        (conditions ? good : bad)++;
    }
    CHECK(good > 10);
    CHECK(bad > 10);
}
