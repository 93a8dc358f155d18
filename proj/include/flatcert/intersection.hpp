#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Geometry>

#include "flatcert/refine.hpp"

namespace flatcert {

struct SoupTriangle {
    std::array<Vec3, 3> points;
    int source_face = -1;
    std::array<int, 3> corners{-1, -1, -1};  // vertex ids; equal ids mean a shared vertex
};

/// Triangles with provenance. `face_vertices[f]` is the sorted vertex set of
/// source face f and drives the adjacency exclusion.
struct TriangleSoup {
    std::vector<SoupTriangle> triangles;
    std::vector<std::vector<int>> face_vertices;

    /// Throws GeometryError if any triangle has zero area.
    static TriangleSoup from_refinement(const Refinement& refinement);
    /// Unrelated triangles: distinct vertex ids and one source face each.
    static TriangleSoup from_triangles(const std::vector<std::array<Vec3, 3>>& tris);
};

struct BoundingHierarchy {
    struct Node {
        Eigen::AlignedBox3d box;
        int left = -1;
        int right = -1;
        int begin = 0;  // range into `order`
        int end = 0;

        bool is_leaf() const noexcept { return left < 0; }
    };

    std::vector<Node> nodes;  // nodes[0] is the root
    std::vector<int> order;   // triangle ids, leaves own contiguous ranges
    int leaf_size = 8;
};

/// Median split on the longest axis of each node's box.
BoundingHierarchy build_hierarchy(const TriangleSoup& soup, int leaf_size = 8);

enum class ContactKind {
    Crossing,  // each triangle has vertices strictly on both sides of the other's plane
    Touching,  // non-coplanar contact where one triangle only reaches the other's plane
    Coplanar,  // overlap inside a common plane
};

const char* to_string(ContactKind kind);

struct IntersectionPair {
    int first = -1;   // first < second
    int second = -1;
    ContactKind kind = ContactKind::Crossing;

    friend bool operator==(const IntersectionPair&, const IntersectionPair&) = default;
    friend auto operator<=>(const IntersectionPair& a, const IntersectionPair& b)
    {
        return std::pair{a.first, a.second} <=> std::pair{b.first, b.second};
    }
};

struct SelfIntersections {
    /// Global self-intersections between triangles of non-adjacent source faces.
    std::vector<IntersectionPair> pairs;
    /// Triangles of the same or adjacent source faces that meet beyond their
    /// shared vertices and edges (a local injectivity failure).
    std::vector<IntersectionPair> local_overlaps;
};

/// Exact closed-triangle intersection test (no adjacency rules).
std::optional<ContactKind> triangles_intersect(const std::array<Vec3, 3>& t1, const std::array<Vec3, 3>& t2);

/// Closed segment against closed triangle, exact.
bool segment_meets_triangle(const Vec3& p, const Vec3& q, const std::array<Vec3, 3>& tri);

SelfIntersections self_intersections(const TriangleSoup& soup, const BoundingHierarchy& hierarchy);

/// All-pairs reference with the same narrow phase and adjacency rules.
SelfIntersections self_intersections_brute_force(const TriangleSoup& soup);

enum class ImmersionClass { Embedded, Immersed, NotAnImmersion };

const char* to_string(ImmersionClass c);

ImmersionClass classify_immersion(bool vertex_figures_embedded, const std::vector<IntersectionPair>& pairs);

}  // namespace flatcert
