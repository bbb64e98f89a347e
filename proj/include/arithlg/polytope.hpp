#pragma once

// Newton polyhedra conv({0} ∪ support) in Z^n for n <= 4, with exact integer
// geometry throughout: facets, the full face lattice, and n!·vol by a pulling
// triangulation of the fan from the origin.

#include "arithlg/error.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace arithlg {

inline constexpr unsigned kMaxPolytopeDimension = 4;
/// Keeps every 4x4 determinant of coordinate differences inside 128 bits.
inline constexpr std::int64_t kMaxLatticeCoordinate = 1'000'000;

using LatticePoint = std::vector<std::int64_t>;

/// Inward facet inequality normal·x >= offset, normal primitive.
struct Facet {
    LatticePoint normal;
    std::int64_t offset = 0;
    /// Indices into Polytope::generators() of the points on the facet.
    std::vector<std::size_t> generators;
};

struct Face {
    /// Indices of the facets whose hyperplanes contain the face.
    std::vector<std::size_t> facets;
    /// Indices into Polytope::generators(), ascending.
    std::vector<std::size_t> generators;
    std::vector<LatticePoint> points;
    unsigned dim = 0;
    bool contains_origin = false;

    bool contains(const LatticePoint& w) const;
};

enum class PullingOrder { FirstVertex, LastVertex };

class Polytope {
public:
    unsigned ambient_dim() const noexcept { return n_; }
    /// Dimension of the affine (here: linear) span of the generators.
    unsigned dim() const noexcept { return dim_; }
    bool degenerate() const noexcept { return dim_ < n_; }
    /// Throws DegeneratePolytope when dim() < ambient_dim().
    void require_full_dimensional() const;

    /// {0} ∪ support, deduplicated, lexicographically sorted.
    const std::vector<LatticePoint>& generators() const noexcept { return generators_; }
    /// Empty for a degenerate polytope.
    const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }
    const std::vector<Facet>& facets() const noexcept { return facets_; }
    /// Every proper nonempty face, ordered by dimension and then by generator set.
    const std::vector<Face>& faces() const noexcept { return faces_; }

    /// Satisfies every facet inequality.
    bool contains(const LatticePoint& w) const;
    /// Satisfies every facet inequality strictly.
    bool contains_in_interior(const LatticePoint& w) const;

private:
    friend Polytope newton_polyhedron(std::span<const LatticePoint> support);
    unsigned n_ = 0;
    unsigned dim_ = 0;
    std::vector<LatticePoint> generators_;
    std::vector<LatticePoint> vertices_;
    std::vector<Facet> facets_;
    std::vector<Face> faces_;
};

/// DimensionUnsupported unless 1 <= n <= 4; InvalidInput for an empty support,
/// mixed dimensions, or coordinates beyond kMaxLatticeCoordinate. A
/// lower-dimensional hull is returned flagged, not thrown.
Polytope newton_polyhedron(std::span<const LatticePoint> support);

/// 0 lies in the interior: every facet offset is negative.
bool is_convenient(const Polytope& P);

/// n!·vol(P) from the cones over the facets that avoid the origin.
std::uint64_t normalized_volume(const Polytope& P, PullingOrder order = PullingOrder::FirstVertex);

/// The simplices (each n lattice points, apex 0 implied) behind normalized_volume.
std::vector<std::vector<LatticePoint>> fan_triangulation(const Polytope& P,
                                                         PullingOrder order = PullingOrder::FirstVertex);

std::vector<Face> faces_not_containing_origin(const Polytope& P);

/// |det| of n points in Z^n, exactly.
std::uint64_t abs_determinant(const std::vector<LatticePoint>& rows);

}  // namespace arithlg
