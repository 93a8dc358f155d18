#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace flatcert {

using Vec3 = Eigen::Vector3d;
using Face = std::vector<int>;

/// Unordered vertex pair, always stored with first < second.
struct EdgeKey {
    int a = 0;
    int b = 0;

    EdgeKey() = default;
    EdgeKey(int u, int v) : a(u < v ? u : v), b(u < v ? v : u) {}

    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Raised when raw input cannot form a valid cell complex.
class ComplexError : public std::runtime_error {
public:
    enum class Kind { IndexOutOfRange, FaceTooSmall, RepeatedVertex, DuplicateFace };

    ComplexError(Kind kind, int face, const std::string& what)
        : std::runtime_error(what), kind_(kind), face_(face) {}

    Kind kind() const noexcept { return kind_; }
    /// 0-based index of the offending face.
    int face() const noexcept { return face_; }

private:
    Kind kind_;
    int face_;
};

/**
 * Polygonal cell complex: vertex positions plus faces given as cyclic tuples of
 * 0-based vertex indices. Immutable once built; construct through build().
 */
class CellComplex {
public:
    CellComplex() = default;

    /// Validates and builds a complex from 0-based faces.
    static CellComplex build(std::vector<Vec3> vertices, std::vector<Face> faces);

    /// Same as build() but faces use the 1-based interchange convention.
    static CellComplex build_one_based(std::vector<Vec3> vertices, std::vector<Face> faces);

    const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
    const std::vector<Face>& faces() const noexcept { return faces_; }
    int num_vertices() const noexcept { return static_cast<int>(vertices_.size()); }
    int num_faces() const noexcept { return static_cast<int>(faces_.size()); }

    /// Face count keyed by degree (3 -> triangles, 4 -> quads, ...).
    std::map<int, int> degree_census() const;

    bool is_triangulated() const;

private:
    std::vector<Vec3> vertices_;
    std::vector<Face> faces_;
};

/// Rotation to minimal vertex first, then the lexicographically smaller direction.
Face canonical_cycle(const Face& face);

/// Number of face sides realizing each unordered vertex pair.
using EdgeCensus = std::map<EdgeKey, int>;

EdgeCensus edge_census(const CellComplex& complex);

}  // namespace flatcert
