#include "arithlg/filtration_search.hpp"

#include <array>
#include <numeric>

namespace arithlg {

namespace {

using IVec = std::array<std::int64_t, 3>;
using IMat = std::array<std::array<std::int64_t, 3>, 3>;

struct ISub {
    int dim = 0;
    std::vector<IVec> basis;
};

// Rank by fraction-free elimination; entries stay small because rows are
// divided by their content after every step.
int irank(std::vector<IVec> v, int d) {
    int rank = 0;
    for (int c = 0; c < d && rank < static_cast<int>(v.size()); ++c) {
        auto piv = static_cast<std::size_t>(rank);
        while (piv < v.size() && v[piv][c] == 0) ++piv;
        if (piv == v.size()) continue;
        std::swap(v[piv], v[rank]);
        const IVec pr = v[rank];
        for (auto r = static_cast<std::size_t>(rank) + 1; r < v.size(); ++r) {
            const std::int64_t a = pr[c], b = v[r][c];
            std::int64_t g = 0;
            for (int j = 0; j < d; ++j) {
                v[r][j] = a * v[r][j] - b * pr[j];
                g = std::gcd(g, v[r][j]);
            }
            if (g > 1)
                for (int j = 0; j < d; ++j) v[r][j] /= g;
        }
        ++rank;
    }
    return rank;
}

bool icontains(const ISub& S, const std::vector<IVec>& vs, int d) {
    auto all = S.basis;
    all.insert(all.end(), vs.begin(), vs.end());
    return irank(all, d) == S.dim;
}

IVec iapply(const IMat& N, const IVec& v, int d) {
    IVec r{0, 0, 0};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r[i] += N[i][j] * v[j];
    return r;
}

std::vector<IVec> imap(const IMat& N, const std::vector<IVec>& vs, int d) {
    std::vector<IVec> out;
    for (const auto& v : vs) out.push_back(iapply(N, v, d));
    return out;
}

IMat imul(const IMat& a, const IMat& b, int d) {
    IMat r{};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int l = 0; l < d; ++l) r[i][j] += a[i][l] * b[l][j];
    return r;
}

bool normalized_primitive(const IVec& v, int d) {
    std::int64_t g = 0;
    int first = -1;
    for (int i = 0; i < d; ++i) {
        g = std::gcd(g, v[i]);
        if (first < 0 && v[i] != 0) first = i;
    }
    return g == 1 && first >= 0 && v[first] > 0;
}

std::vector<ISub> subspace_pool(int d) {
    std::vector<ISub> pool{{0, {}}};
    const auto each = [&](std::int64_t R, auto&& fn) {
        const std::int64_t Rb = d > 1 ? R : 0, Rc = d > 2 ? R : 0;
        for (std::int64_t a = -R; a <= R; ++a)
            for (std::int64_t b = -Rb; b <= Rb; ++b)
                for (std::int64_t c = -Rc; c <= Rc; ++c) {
                    const IVec v{a, b, c};
                    if (normalized_primitive(v, d)) fn(v);
                }
    };
    if (d > 1) each(3, [&](const IVec& w) { pool.push_back({1, {w}}); });
    if (d == 3) {
        each(6, [&](const IVec& nrm) {
            std::vector<IVec> b;
            for (int i = 0; i < 3 && b.size() < 2; ++i) {
                IVec e{0, 0, 0};
                e[i] = 1;
                const IVec x{nrm[1] * e[2] - nrm[2] * e[1], nrm[2] * e[0] - nrm[0] * e[2], nrm[0] * e[1] - nrm[1] * e[0]};
                auto cand = b;
                cand.push_back(x);
                if (irank(cand, 3) == static_cast<int>(cand.size())) b.push_back(x);
            }
            pool.push_back({2, b});
        });
    }
    ISub whole{d, {}};
    for (int i = 0; i < d; ++i) {
        IVec e{0, 0, 0};
        e[i] = 1;
        whole.basis.push_back(e);
    }
    pool.push_back(whole);
    return pool;
}

const std::vector<ISub>& cached_pool(int d) {
    static const std::array<std::vector<ISub>, 3> pools{subspace_pool(1), subspace_pool(2), subspace_pool(3)};
    return pools[static_cast<std::size_t>(d - 1)];
}

Subspace to_subspace(const ISub& S, int d) {
    std::vector<QVector> vs;
    for (const auto& b : S.basis) {
        QVector v;
        for (int i = 0; i < d; ++i) v.emplace_back(mpz_class(std::to_string(b[i])));
        vs.push_back(std::move(v));
    }
    return Subspace::span(static_cast<std::size_t>(d), vs);
}

}  // namespace

QMatrix to_qmatrix(const IntMatrix& N) {
    QMatrix m;
    for (const auto& row : N) {
        QVector r;
        for (auto x : row) r.emplace_back(mpz_class(std::to_string(x)));
        m.push_back(std::move(r));
    }
    return m;
}

std::vector<Filtration> exhaustive_monodromy_filtrations(const IntMatrix& Nin) {
    const int d = static_cast<int>(Nin.size());
    if (d < 1 || d > 3) throw Error(ErrorCode::DimensionUnsupported, "exhaustive search handles dimensions 1..3");
    IMat N{};
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(Nin[i].size()) != d) throw Error(ErrorCode::InvalidInput, "matrix is not square");
        for (int j = 0; j < d; ++j) N[i][j] = Nin[i][j];
    }

    std::vector<const ISub*> invariant;
    for (const auto& S : cached_pool(d))
        if (icontains(S, imap(N, S.basis, d), d)) invariant.push_back(&S);
    std::vector<IMat> pw(1, IMat{});
    for (int i = 0; i < d; ++i) pw[0][i][i] = 1;
    for (int j = 1; j <= d; ++j) pw.push_back(imul(pw.back(), N, d));
    std::vector<int> rk;
    for (const auto& P : pw) {
        std::vector<IVec> cols;
        for (int j = 0; j < d; ++j) cols.push_back({P[0][j], P[1][j], P[2][j]});
        rk.push_back(irank(cols, d));
    }

    const ISub zero{0, {}};
    const int lo = -d + 1, hi = d - 1;
    std::vector<const ISub*> chain(static_cast<std::size_t>(hi - lo + 1), nullptr);
    const auto at = [&](int k) -> const ISub& { return k < lo ? zero : *chain[static_cast<std::size_t>(k - lo)]; };
    std::vector<Filtration> found;

    // Chains are grown from the bottom. A step to M_k is admissible only if
    // N M_k ⊆ M_{k-2}; below 0 the jump cannot exceed rank N^{-k}, and above 0
    // N^k must map gr_k isomorphically onto the already fixed gr_{-k}.
    const auto dfs = [&](auto&& self, int k) -> void {
        if (k > hi) {
            const ISub& top = at(hi);
            if (top.dim != d || !icontains(at(hi - 1), imap(N, top.basis, d), d)) return;
            Filtration F;
            F.dim = static_cast<std::size_t>(d);
            int prev = 0;
            for (int j = lo; j <= hi; ++j) {
                if (at(j).dim != prev) F.jumps.emplace(j, to_subspace(at(j), d));
                prev = at(j).dim;
            }
            found.push_back(std::move(F));
            return;
        }
        const ISub& prev = at(k - 1);
        for (const ISub* S : invariant) {
            if (S->dim < prev.dim || !icontains(*S, prev.basis, d)) continue;
            const int jump = S->dim - prev.dim;
            if (k < 0 && jump > rk[static_cast<std::size_t>(-k)]) continue;
            if (!icontains(at(k - 2), imap(N, S->basis, d), d)) continue;
            if (k > 0) {
                const ISub& lower = at(-k - 1);
                if (jump != at(-k).dim - lower.dim) continue;
                auto img = imap(pw[static_cast<std::size_t>(k)], S->basis, d);
                img.insert(img.end(), lower.basis.begin(), lower.basis.end());
                if (irank(img, d) - lower.dim != jump) continue;
            }
            chain[static_cast<std::size_t>(k - lo)] = S;
            self(self, k + 1);
        }
    };
    dfs(dfs, lo);
    return found;
}

std::vector<IntMatrix> small_nilpotent_matrices(int d) {
    if (d < 1 || d > 3) throw Error(ErrorCode::DimensionUnsupported, "dimensions 1..3 only");
    std::vector<IntMatrix> out;
    const int cells = d * d;
    long total = 1;
    for (int i = 0; i < cells; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
        IMat N{};
        long c = code;
        for (int i = 0; i < cells; ++i, c /= 3) N[i / d][i % d] = c % 3 - 1;
        IMat P = N;
        for (int j = 1; j < d; ++j) P = imul(P, N, d);
        bool nil = true;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) nil = nil && P[i][j] == 0;
        if (!nil) continue;
        IntMatrix M(static_cast<std::size_t>(d), std::vector<std::int64_t>(static_cast<std::size_t>(d)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) M[i][j] = N[i][j];
        out.push_back(std::move(M));
    }
    return out;
}

}  // namespace arithlg
