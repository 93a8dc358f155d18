#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "flatcert/complex.hpp"
#include "flatcert/flatness.hpp"

namespace flatcert {

class RefineError : public std::runtime_error {
public:
    RefineError(int face, const std::string& what) : std::runtime_error(what), face_(face) {}
    int face() const noexcept { return face_; }

private:
    int face_;
};

/// Where a derived vertex comes from: affine weights over source vertices.
struct VertexOrigin {
    std::vector<std::pair<int, double>> weights;

    bool is_source_vertex() const { return weights.size() == 1; }
};

struct Refinement {
    CellComplex source;
    CellComplex derived;
    std::vector<int> triangle_source_face;   // per derived face
    std::vector<VertexOrigin> vertex_origin; // per derived vertex
    std::vector<bool> fallback;              // per source face: fanned instead of ear-clipped
};

/**
 * Ear-clips every face with more than three corners inside its fitted plane,
 * using only the original vertices. Among valid ears the one whose tip has the
 * lowest vertex index is cut first. Faces that are not planar within
 * `planarity_tol` (or cannot be fitted) are fanned from their lowest index.
 *
 * Throws RefineError for a planar face that is not simple or has no valid ear.
 */
Refinement triangulate_faces(const CellComplex& complex, const ToleranceProfile& tol = {});

/// Splits each triangle into six through its edge midpoints and centroid.
/// Throws RefineError if the complex has non-triangular faces.
Refinement barycentric_subdivision(const CellComplex& complex);

/// Sum of face areas, each taken as the norm of the polygon's vector area.
double total_area(const CellComplex& complex);

}  // namespace flatcert
