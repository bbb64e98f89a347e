#include "arithlg/polytope.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>

using namespace arithlg;

namespace {

using Pts = std::vector<LatticePoint>;

std::int64_t cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain plus the shoelace formula: twice the area of the
// planar hull, which is the normalized volume in dimension 2.
std::int64_t shoelace_twice_area(Pts pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return 0;
    Pts hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        s += a[0] * b[1] - a[1] * b[0];
    }
    return s < 0 ? -s : s;
}

Pts random_points(std::mt19937_64& rng, std::size_t n, std::size_t count, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    Pts out;
    for (std::size_t i = 0; i < count; ++i) {
        LatticePoint w(n);
        for (auto& x : w) x = d(rng);
        out.push_back(w);
    }
    return out;
}

// Random unimodular matrix as a product of elementary shears and swaps.
std::vector<LatticePoint> random_unimodular(std::mt19937_64& rng, std::size_t n) {
    std::vector<LatticePoint> M(n, LatticePoint(n, 0));
    for (std::size_t i = 0; i < n; ++i) M[i][i] = 1;
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> c(-1, 1);
    for (int step = 0; step < 6; ++step) {
        const auto i = idx(rng);
        const auto j = idx(rng);
        if (i == j) {
            for (auto& row : M) row[i] = -row[i];
            continue;
        }
        const int s = c(rng);
        for (auto& row : M) row[i] += s * row[j];
    }
    return M;
}

LatticePoint apply(const std::vector<LatticePoint>& M, const LatticePoint& w) {
    LatticePoint r(w.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) r[i] += M[i][j] * w[j];
    return r;
}

}  // namespace

TEST_CASE("segment [-1, 1]") {
    const Pts s{{1}, {-1}};
    const auto P = newton_polyhedron(s);
    CHECK_FALSE(P.degenerate());
    CHECK(P.vertices() == Pts{{-1}, {1}});
    CHECK(is_convenient(P));
    CHECK(normalized_volume(P) == 2);
    const auto faces = faces_not_containing_origin(P);
    REQUIRE(faces.size() == 2);
    CHECK(faces[0].points == Pts{{-1}});
    CHECK(faces[1].points == Pts{{1}});
}

TEST_CASE("segment [0, 1] is not convenient") {
    const Pts s{{1}};
    const auto P = newton_polyhedron(s);
    CHECK_FALSE(is_convenient(P));
    CHECK(normalized_volume(P) == 1);
    const auto faces = faces_not_containing_origin(P);
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].points == Pts{{1}});
}

TEST_CASE("the triangle (1,0), (0,1), (-1,-1)") {
    const Pts s{{1, 0}, {0, 1}, {-1, -1}};
    const auto P = newton_polyhedron(s);
    CHECK(P.vertices() == Pts{{-1, -1}, {0, 1}, {1, 0}});
    CHECK(P.facets().size() == 3);
    CHECK(is_convenient(P));
    CHECK(normalized_volume(P) == 3);
    CHECK(P.contains_in_interior({0, 0}));
    const auto faces = faces_not_containing_origin(P);
    CHECK(faces.size() == 6);
    CHECK(std::count_if(faces.begin(), faces.end(), [](const Face& f) { return f.dim == 1; }) == 3);
    bool edge_found = false;
    for (const auto& f : faces) {
        if (f.points == Pts{{0, 1}, {1, 0}}) edge_found = true;
    }
    CHECK(edge_found);
}

TEST_CASE("triangle (2,0), (0,1), (-1,-1) has volume 5") {
    const Pts s{{2, 0}, {0, 1}, {-1, -1}};
    const auto P = newton_polyhedron(s);
    CHECK(normalized_volume(P) == 5);
    CHECK(shoelace_twice_area(s) == 5);
    // (1,0) is a generator-free lattice point strictly inside.
    CHECK(P.contains_in_interior({1, 0}));
}

TEST_CASE("degenerate supports are flagged and refused downstream") {
    const Pts s{{2, 0}};
    const auto P = newton_polyhedron(s);
    CHECK(P.degenerate());
    CHECK(P.dim() == 1);
    try {
        normalized_volume(P);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegeneratePolytope);
    }
    CHECK_THROWS_AS(is_convenient(P), Error);
    CHECK_THROWS_AS(faces_not_containing_origin(P), Error);
}

TEST_CASE("input validation") {
    const Pts five{{1, 0, 0, 0, 0}};
    try {
        newton_polyhedron(five);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionUnsupported);
    }
    const Pts mixed{{1, 0}, {1}};
    CHECK_THROWS_AS(newton_polyhedron(mixed), Error);
    const Pts none;
    CHECK_THROWS_AS(newton_polyhedron(none), Error);
}

TEST_CASE("reference volumes in dimensions 3 and 4") {
    const Pts simplex3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}};
    CHECK(normalized_volume(newton_polyhedron(simplex3)) == 4);
    const Pts cross3{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    CHECK(normalized_volume(newton_polyhedron(cross3)) == 8);
    Pts cube;
    for (int a : {-1, 1})
        for (int b : {-1, 1})
            for (int c : {-1, 1}) cube.push_back({a, b, c});
    const auto C = newton_polyhedron(cube);
    CHECK(normalized_volume(C) == 48);
    CHECK(C.facets().size() == 6);
    CHECK(C.vertices().size() == 8);
    // 8 vertices, 12 edges, 6 squares.
    CHECK(faces_not_containing_origin(C).size() == 26);

    const Pts simplex4{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, -1, -1, -1}};
    CHECK(normalized_volume(newton_polyhedron(simplex4)) == 5);
    Pts cross4;
    for (std::size_t i = 0; i < 4; ++i) {
        for (int s : {-1, 1}) {
            LatticePoint w(4, 0);
            w[i] = s;
            cross4.push_back(w);
        }
    }
    const auto X4 = newton_polyhedron(cross4);
    CHECK(normalized_volume(X4) == 16);
    CHECK(X4.facets().size() == 16);
    // f-vector of the 4-dimensional cross-polytope: 8, 24, 32, 16.
    CHECK(X4.faces().size() == 80);
}

TEST_CASE("planar volumes agree with the shoelace oracle") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<std::size_t> cnt(1, 7);
        auto pts = random_points(rng, 2, cnt(rng), 4);
        auto with_origin = pts;
        with_origin.push_back({0, 0});
        const auto P = newton_polyhedron(pts);
        const auto oracle = shoelace_twice_area(with_origin);
        if (oracle == 0) {
            CHECK(P.degenerate());
            continue;
        }
        REQUIRE_FALSE(P.degenerate());
        CHECK(static_cast<std::int64_t>(normalized_volume(P)) == oracle);
    }
}

TEST_CASE("volume is independent of the pulling order and unimodular changes of basis") {
    std::mt19937_64 rng(22);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int trial = 0; trial < (n == 4 ? 15 : 40); ++trial) {
            const auto pts = random_points(rng, n, n + 3, 2);
            const auto P = newton_polyhedron(pts);
            if (P.degenerate()) continue;
            const auto v = normalized_volume(P, PullingOrder::FirstVertex);
            CHECK(v == normalized_volume(P, PullingOrder::LastVertex));

            const auto M = random_unimodular(rng, n);
            Pts moved;
            for (const auto& w : pts) moved.push_back(apply(M, w));
            const auto Q = newton_polyhedron(moved);
            CHECK(normalized_volume(Q) == v);
            CHECK(Q.faces().size() == P.faces().size());
            CHECK(is_convenient(Q) == is_convenient(P));
        }
    }
}

TEST_CASE("adding a generator never decreases the volume") {
    std::mt19937_64 rng(23);
    for (std::size_t n : {2u, 3u}) {
        for (int trial = 0; trial < 40; ++trial) {
            auto pts = random_points(rng, n, n + 2, 3);
            const auto P = newton_polyhedron(pts);
            if (P.degenerate()) continue;
            const auto before = normalized_volume(P);
            pts.push_back(random_points(rng, n, 1, 4).front());
            CHECK(normalized_volume(newton_polyhedron(pts)) >= before);
        }
    }
}

TEST_CASE("structural invariants of the hull") {
    std::mt19937_64 rng(24);
    for (std::size_t n : {1u, 2u, 3u, 4u}) {
        for (int trial = 0; trial < 25; ++trial) {
            const auto pts = random_points(rng, n, n + 3, 2);
            const auto P = newton_polyhedron(pts);
            if (P.degenerate()) continue;
            for (const auto& f : P.facets()) {
                std::int64_t g = 0;
                for (auto x : f.normal) g = std::gcd(g, x < 0 ? -x : x);
                CHECK(g == 1);
                for (const auto& w : P.generators()) {
                    std::int64_t s = 0;
                    for (std::size_t i = 0; i < n; ++i) s += f.normal[i] * w[i];
                    CHECK(s >= f.offset);
                }
            }
            for (const auto& v : P.vertices()) {
                CHECK(std::find(P.generators().begin(), P.generators().end(), v) != P.generators().end());
            }
            for (const auto& face : P.faces()) {
                CHECK(face.dim < n);
                CHECK_FALSE(face.facets.empty());
            }
            if (is_convenient(P)) {
                // Every generator off the interior lies on some face avoiding 0.
                const auto faces = faces_not_containing_origin(P);
                CHECK(faces.size() == P.faces().size());
                for (const auto& w : P.generators()) {
                    if (P.contains_in_interior(w)) continue;
                    bool covered = false;
                    for (const auto& f : faces) covered = covered || f.contains(w);
                    CHECK(covered);
                }
            }
        }
    }
}
