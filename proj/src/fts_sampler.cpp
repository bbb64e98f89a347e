#include "arithlg/fts_sampler.hpp"

namespace arithlg {

namespace {

RatFunc rf(const MPoly& p) { return RatFunc(p); }
RatFunc cst(unsigned nv, long c) { return RatFunc::constant(nv, c); }

RMatrix diag(const std::vector<long>& d, unsigned nv) {
    RMatrix m = r_zero(d.size(), nv);
    for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = cst(nv, d[i]);
    return m;
}

}  // namespace

MPoly random_poly(unsigned nv, unsigned max_deg, bool with_t, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-2, 2), e(0, static_cast<int>(max_deg));
    MPoly p(nv);
    for (int k = 0; k < 3; ++k) {
        Exponent ex(nv, 0);
        for (unsigned i = with_t ? 0 : 1; i < nv; ++i) ex[i] = static_cast<unsigned>(e(rng));
        unsigned total = 0;
        for (auto x : ex) total += x;
        if (total > max_deg) continue;
        p.add_term(ex, c(rng));
    }
    return p;
}

RMatrix random_matrix(std::size_t r, unsigned nv, unsigned deg, bool with_t, std::mt19937_64& rng) {
    RMatrix m = r_zero(r, nv);
    for (auto& row : m)
        for (auto& e : row) e = rf(random_poly(nv, deg, with_t, rng));
    return m;
}

std::pair<RMatrix, RMatrix> random_unipotent(std::size_t r, unsigned nv, bool with_t, std::mt19937_64& rng) {
    RMatrix N = r_zero(r, nv);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) N[i][j] = rf(random_poly(nv, 1, with_t, rng));
    const RMatrix I = r_identity(r, nv);
    RMatrix inv = I, power = I;
    for (std::size_t k = 1; k < r; ++k) {
        power = r_mul(power, N);
        inv = k % 2 ? r_sub(inv, power) : r_add(inv, power);
    }
    return {r_add(I, N), inv};
}

RMatrix conjugate(const RMatrix& hinv, const RMatrix& X, const RMatrix& h) { return r_mul(r_mul(hinv, X), h); }

FTSTuple random_valid_fts(std::size_t r, unsigned m, std::mt19937_64& rng) {
    const unsigned nv = m + 1;
    std::uniform_int_distribution<long> w(0, 2), c(-2, 2), nz(1, 3);
    std::vector<long> ws(r);
    for (auto& x : ws) x = w(rng);
    RMatrix Rinf = diag(ws, nv);
    RMatrix phi1 = r_zero(r, nv);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            if (ws[b] - ws[a] == 1) phi1[a][b] = cst(nv, c(rng));
    std::vector<RMatrix> Phi{phi1};
    if (m > 1) Phi.push_back(r_scale(phi1, cst(nv, c(rng))));
    RMatrix R0 = r_add(r_scale(r_identity(r, nv), cst(nv, nz(rng))), r_scale(phi1, cst(nv, c(rng))));

    auto [h, hinv] = random_unipotent(r, nv, false, rng);
    std::vector<RMatrix> A, PhiG;
    for (unsigned i = 1; i <= m; ++i) {
        A.push_back(r_mul(hinv, r_derivative(h, i)));
        PhiG.push_back(conjugate(hinv, Phi[i - 1], h));
    }
    return make_fts(r, m, A, PhiG, conjugate(hinv, R0, h), conjugate(hinv, Rinf, h));
}

FTSTuple random_fts(std::size_t r, unsigned m, std::mt19937_64& rng) {
    const unsigned nv = m + 1;
    std::vector<RMatrix> A, Phi;
    for (unsigned i = 0; i < m; ++i) {
        A.push_back(random_matrix(r, nv, 2, false, rng));
        Phi.push_back(random_matrix(r, nv, 2, false, rng));
    }
    return make_fts(r, m, A, Phi, random_matrix(r, nv, 2, false, rng), random_matrix(r, nv, 2, false, rng));
}

FTSTuple perturbed_fts(FTSTuple T, std::mt19937_64& rng) {
    const unsigned nv = T.m + 1;
    std::uniform_int_distribution<int> which(0, 3);
    std::uniform_int_distribution<std::size_t> idx(0, T.r - 1);
    const RatFunc bump = rf(random_poly(nv, 2, false, rng)) + cst(nv, 1);
    const std::size_t i = idx(rng), j = idx(rng);
    switch (which(rng)) {
        case 0: T.A[0][i][j] += bump; break;
        case 1: T.Phi[0][i][j] += bump; break;
        case 2: T.R0[i][j] += bump; break;
        default: T.Rinf[i][j] += bump; break;
    }
    return T;
}

}  // namespace arithlg
