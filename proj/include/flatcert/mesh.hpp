#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatcert/complex.hpp"

namespace flatcert {

struct HalfEdge {
    int origin = -1;
    int face = -1;
    int next = -1;
    int twin = -1;  // -1 on boundary or non-manifold edges
};

/// One face corner in a vertex star, with the two neighbours it connects.
struct StarCorner {
    int face = -1;
    int corner = -1;       // position of the star vertex inside the face tuple
    int from = -1;         // neighbour shared with the previous corner in the cycle
    int to = -1;           // neighbour shared with the next corner in the cycle
};

using StarCycle = std::vector<StarCorner>;

/**
 * Connectivity of a cell complex. Half-edges of face f occupy a contiguous
 * range starting at face_begin(f), in tuple order. Vertex stars are stored as
 * cycles of corners linked through shared edges; on a closed manifold each
 * vertex has exactly one.
 */
class HalfEdgeMesh {
public:
    static HalfEdgeMesh build(const CellComplex& complex);

    const CellComplex& complex() const noexcept { return complex_; }
    const std::vector<HalfEdge>& half_edges() const noexcept { return half_edges_; }
    int face_begin(int face) const { return face_offsets_[face]; }

    /// Distinct edges, sorted.
    const std::vector<EdgeKey>& edges() const noexcept { return edges_; }
    /// Faces using each edge, parallel to edges().
    const std::vector<std::vector<int>>& edge_faces() const noexcept { return edge_faces_; }
    int edge_index(EdgeKey key) const;

    /// Star cycles of a vertex. Empty for isolated vertices; open chains are
    /// not represented (their vertex is reported by the manifold check).
    const std::vector<StarCycle>& star_cycles(int vertex) const { return stars_[vertex]; }
    /// The single star cycle of a manifold vertex.
    const StarCycle& vertex_star(int vertex) const;

    int num_vertices() const noexcept { return complex_.num_vertices(); }
    int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
    int num_faces() const noexcept { return complex_.num_faces(); }

private:
    CellComplex complex_;
    std::vector<HalfEdge> half_edges_;
    std::vector<int> face_offsets_;
    std::vector<EdgeKey> edges_;
    std::vector<std::vector<int>> edge_faces_;
    std::vector<std::vector<StarCycle>> stars_;
};

struct ManifoldDiagnostic {
    enum class Kind { BoundaryEdge, NonManifoldEdge, PinchedVertex, IsolatedVertex };

    Kind kind;
    EdgeKey edge;       // edge diagnostics
    int vertex = -1;    // vertex diagnostics
    int count = 0;      // edge usage, or number of star cycles

    std::string describe() const;
};

const char* to_string(ManifoldDiagnostic::Kind kind);

struct ManifoldCheck {
    std::optional<HalfEdgeMesh> mesh;          // set iff closed manifold
    std::vector<ManifoldDiagnostic> diagnostics;

    bool ok() const noexcept { return mesh.has_value(); }
};

/// Every edge used exactly twice and every vertex star a single cycle.
ManifoldCheck check_closed_manifold(const CellComplex& complex);

int euler_characteristic(const HalfEdgeMesh& mesh);

struct Components {
    int count = 0;
    std::vector<int> face_label;  // component per face, numbered by lowest face index
};

/// Components of the face adjacency graph (faces sharing an edge).
Components connected_components(const HalfEdgeMesh& mesh);

struct Orientability {
    bool orientable = true;                 // all components orientable
    std::vector<bool> per_component;
    /// Face orientation signs found by propagation (+1 keeps the tuple order).
    std::vector<int> face_sign;
};

/// Breadth-first propagation of face orientations across shared edges.
Orientability orientability(const HalfEdgeMesh& mesh);

}  // namespace flatcert
