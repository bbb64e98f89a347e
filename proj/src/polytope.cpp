#include "arithlg/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace arithlg {

namespace {

using i128 = __int128;

i128 det_rec(std::vector<std::vector<i128>> m) {
    const std::size_t k = m.size();
    if (k == 0) return 1;
    if (k == 1) return m[0][0];
    if (k == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    i128 total = 0;
    for (std::size_t c = 0; c < k; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<std::vector<i128>> minor;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<i128> row;
            for (std::size_t j = 0; j < k; ++j) {
                if (j != c) row.push_back(m[r][j]);
            }
            minor.push_back(std::move(row));
        }
        const i128 term = m[0][c] * det_rec(std::move(minor));
        total += (c % 2 == 0) ? term : -term;
    }
    return total;
}

// Rank by fraction-free elimination; entries stay minors of size <= 4.
unsigned rank_of(const std::vector<LatticePoint>& rows, std::size_t n) {
    std::vector<std::vector<i128>> m;
    for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
    i128 prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            for (std::size_t j = col + 1; j < n; ++j) {
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<unsigned>(rank);
}

i128 dot(const LatticePoint& a, const LatticePoint& b) {
    i128 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<i128>(a[i]) * b[i];
    return s;
}

LatticePoint minus(const LatticePoint& a, const LatticePoint& b) {
    LatticePoint r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

unsigned affine_dim(const std::vector<LatticePoint>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<LatticePoint> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(minus(pts[i], pts[0]));
    return rank_of(diffs, pts[0].size());
}

// Normal to the hyperplane through n points via signed cofactors of the edge
// matrix; zero when the points are affinely dependent.
LatticePoint hyperplane_normal(const std::vector<const LatticePoint*>& pts, std::size_t n) {
    std::vector<std::vector<i128>> edges;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const auto e = minus(*pts[i], *pts[0]);
        edges.emplace_back(e.begin(), e.end());
    }
    std::vector<i128> u(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<i128>> minor;
        for (const auto& e : edges) {
            std::vector<i128> row;
            for (std::size_t c = 0; c < n; ++c) {
                if (c != j) row.push_back(e[c]);
            }
            minor.push_back(std::move(row));
        }
        const i128 d = det_rec(std::move(minor));
        u[j] = (j % 2 == 0) ? d : -d;
    }
    i128 g = 0;
    for (auto x : u) {
        const i128 a = x < 0 ? -x : x;
        i128 b = g;
        i128 c = a;
        while (c != 0) {
            const i128 t = b % c;
            b = c;
            c = t;
        }
        g = b;
    }
    LatticePoint out(n, 0);
    if (g == 0) return out;
    for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<std::int64_t>(u[j] / g);
    return out;
}

bool is_zero_vector(const LatticePoint& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

// Calls visit(indices) for every k-subset of {0..N-1}.
template <class F>
void for_each_subset(std::size_t N, std::size_t k, F&& visit) {
    if (k > N) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        visit(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == N - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool Face::contains(const LatticePoint& w) const { return std::find(points.begin(), points.end(), w) != points.end(); }

void Polytope::require_full_dimensional() const {
    if (degenerate()) {
        throw Error(ErrorCode::DegeneratePolytope, "Newton polyhedron has dimension " + std::to_string(dim_) +
                                                       " in Z^" + std::to_string(n_));
    }
}

bool Polytope::contains(const LatticePoint& w) const {
    require_full_dimensional();
    if (w.size() != n_) throw Error(ErrorCode::InvalidInput, "lattice point has the wrong dimension");
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return dot(f.normal, w) >= f.offset; });
}

bool Polytope::contains_in_interior(const LatticePoint& w) const {
    require_full_dimensional();
    if (w.size() != n_) throw Error(ErrorCode::InvalidInput, "lattice point has the wrong dimension");
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return dot(f.normal, w) > f.offset; });
}

Polytope newton_polyhedron(std::span<const LatticePoint> support) {
    if (support.empty()) throw Error(ErrorCode::InvalidInput, "empty support");
    const std::size_t n = support.front().size();
    if (n == 0 || n > kMaxPolytopeDimension) {
        throw Error(ErrorCode::DimensionUnsupported,
                    "lattice dimension " + std::to_string(n) + " outside 1.." + std::to_string(kMaxPolytopeDimension));
    }
    std::set<LatticePoint> gens{LatticePoint(n, 0)};
    for (const auto& w : support) {
        if (w.size() != n) throw Error(ErrorCode::InvalidInput, "support points of different dimensions");
        for (auto c : w) {
            if (c > kMaxLatticeCoordinate || c < -kMaxLatticeCoordinate) {
                throw Error(ErrorCode::InvalidInput, "exponent " + std::to_string(c) + " out of range");
            }
        }
        gens.insert(w);
    }

    Polytope P;
    P.n_ = static_cast<unsigned>(n);
    P.generators_.assign(gens.begin(), gens.end());
    P.dim_ = rank_of(P.generators_, n);
    if (P.degenerate()) return P;

    const auto& G = P.generators_;
    std::map<std::pair<LatticePoint, std::int64_t>, std::size_t> seen;
    for_each_subset(G.size(), n, [&](const std::vector<std::size_t>& idx) {
        std::vector<const LatticePoint*> pts;
        for (auto i : idx) pts.push_back(&G[i]);
        LatticePoint u = hyperplane_normal(pts, n);
        if (is_zero_vector(u)) return;
        i128 h = dot(u, G[idx[0]]);
        bool has_pos = false;
        bool has_neg = false;
        for (const auto& g : G) {
            const i128 s = dot(u, g) - h;
            has_pos = has_pos || s > 0;
            has_neg = has_neg || s < 0;
        }
        if (has_pos && has_neg) return;
        if (has_neg) {
            for (auto& x : u) x = -x;
            h = -h;
        }
        const auto key = std::make_pair(u, static_cast<std::int64_t>(h));
        if (seen.count(key)) return;
        Facet f{u, static_cast<std::int64_t>(h), {}};
        for (std::size_t i = 0; i < G.size(); ++i) {
            if (dot(u, G[i]) == h) f.generators.push_back(i);
        }
        seen.emplace(key, P.facets_.size());
        P.facets_.push_back(std::move(f));
    });
    std::sort(P.facets_.begin(), P.facets_.end(), [](const Facet& a, const Facet& b) {
        return std::tie(a.generators, a.normal) < std::tie(b.generators, b.normal);
    });

    // Faces are exactly the nonempty intersections of facets.
    std::set<std::vector<std::size_t>> face_sets;
    std::vector<std::vector<std::size_t>> queue;
    for (const auto& f : P.facets_) {
        if (face_sets.insert(f.generators).second) queue.push_back(f.generators);
    }
    while (!queue.empty()) {
        const auto cur = queue.back();
        queue.pop_back();
        for (const auto& f : P.facets_) {
            std::vector<std::size_t> meet;
            std::set_intersection(cur.begin(), cur.end(), f.generators.begin(), f.generators.end(),
                                  std::back_inserter(meet));
            if (!meet.empty() && face_sets.insert(meet).second) queue.push_back(meet);
        }
    }
    const std::size_t origin = static_cast<std::size_t>(
        std::find(G.begin(), G.end(), LatticePoint(n, 0)) - G.begin());
    for (const auto& s : face_sets) {
        Face face;
        face.generators = s;
        for (auto i : s) face.points.push_back(G[i]);
        face.dim = affine_dim(face.points);
        face.contains_origin = std::binary_search(s.begin(), s.end(), origin);
        for (std::size_t fi = 0; fi < P.facets_.size(); ++fi) {
            if (subset_of(s, P.facets_[fi].generators)) face.facets.push_back(fi);
        }
        P.faces_.push_back(std::move(face));
    }
    std::stable_sort(P.faces_.begin(), P.faces_.end(), [](const Face& a, const Face& b) { return a.dim < b.dim; });
    for (const auto& face : P.faces_) {
        if (face.dim == 0) P.vertices_.push_back(face.points.front());
    }
    return P;
}

bool is_convenient(const Polytope& P) {
    P.require_full_dimensional();
    return std::all_of(P.facets().begin(), P.facets().end(), [](const Facet& f) { return f.offset < 0; });
}

namespace {

// Pulling triangulation of one face: cone from a chosen vertex over the
// subfacets that miss it.
void triangulate_face(const Polytope& P, std::size_t face_index, PullingOrder order,
                      std::vector<LatticePoint>& prefix, std::vector<std::vector<LatticePoint>>& out) {
    const Face& F = P.faces()[face_index];
    if (F.dim == 0) {
        prefix.push_back(F.points.front());
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    std::vector<std::size_t> verts;
    for (std::size_t i = 0; i < P.faces().size(); ++i) {
        const Face& G = P.faces()[i];
        if (G.dim == 0 && subset_of(G.generators, F.generators)) verts.push_back(G.generators.front());
    }
    const std::size_t apex = order == PullingOrder::FirstVertex ? verts.front() : verts.back();
    prefix.push_back(P.generators()[apex]);
    for (std::size_t i = 0; i < P.faces().size(); ++i) {
        const Face& G = P.faces()[i];
        if (G.dim + 1 != F.dim || !subset_of(G.generators, F.generators)) continue;
        if (std::binary_search(G.generators.begin(), G.generators.end(), apex)) continue;
        triangulate_face(P, i, order, prefix, out);
    }
    prefix.pop_back();
}

}  // namespace

std::vector<std::vector<LatticePoint>> fan_triangulation(const Polytope& P, PullingOrder order) {
    P.require_full_dimensional();
    std::vector<std::vector<LatticePoint>> out;
    std::vector<LatticePoint> prefix;
    for (std::size_t i = 0; i < P.faces().size(); ++i) {
        const Face& F = P.faces()[i];
        if (F.dim + 1 == P.ambient_dim() && !F.contains_origin) triangulate_face(P, i, order, prefix, out);
    }
    return out;
}

std::uint64_t abs_determinant(const std::vector<LatticePoint>& rows) {
    std::vector<std::vector<i128>> m;
    for (const auto& r : rows) {
        if (r.size() != rows.size()) throw Error(ErrorCode::InvalidInput, "determinant of a non-square matrix");
        m.emplace_back(r.begin(), r.end());
    }
    i128 d = det_rec(std::move(m));
    if (d < 0) d = -d;
    if (d > static_cast<i128>(UINT64_MAX)) throw Error(ErrorCode::Internal, "determinant exceeds 64 bits");
    return static_cast<std::uint64_t>(d);
}

std::uint64_t normalized_volume(const Polytope& P, PullingOrder order) {
    std::uint64_t total = 0;
    for (const auto& simplex : fan_triangulation(P, order)) total += abs_determinant(simplex);
    return total;
}

std::vector<Face> faces_not_containing_origin(const Polytope& P) {
    P.require_full_dimensional();
    std::vector<Face> out;
    for (const auto& f : P.faces()) {
        if (!f.contains_origin) out.push_back(f);
    }
    return out;
}

}  // namespace arithlg
