#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcert/mesh.hpp"

namespace flatcert {

/// Raised for degenerate geometric input (zero-length edges, collinear faces).
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ToleranceProfile {
    double planarity_tol = 1e-8;  // out-of-plane deviation / face diameter
    double defect_tol = 1e-8;     // radians
    double link_tol = 1e-9;       // radians of arc on the unit sphere

    /// Throws std::invalid_argument unless every tolerance is strictly positive.
    void validate() const;
};

struct PlaneFit {
    Vec3 normal = Vec3::Zero();   // unit
    Vec3 centroid = Vec3::Zero();
    double max_deviation = 0.0;   // largest orthogonal distance to the plane
    double diameter = 0.0;        // largest pairwise distance
    double relative_deviation = 0.0;
};

/// Total least squares plane through the points (smallest principal direction
/// of the centered covariance).
PlaneFit face_plane_fit(std::span<const Vec3> points);

/// Unsigned angle in [0, pi] at `vertex`, via atan2(|a x b|, a . b).
double corner_angle(const Vec3& prev, const Vec3& vertex, const Vec3& next);

/// Geometry of one polygonal face in its fitted plane.
struct FaceGeometry {
    PlaneFit fit;
    bool simple = true;             // no self-crossing in the fitted plane
    Vec3 ccw_normal = Vec3::Zero(); // fitted normal, oriented so the tuple winds counter-clockwise
    std::vector<double> interior_angles;  // per corner, reflex corners exceed pi
};

/// Fit, simplicity and interior angles. Triangles use corner_angle directly;
/// larger faces resolve reflex corners with the fitted-plane orientation.
FaceGeometry face_geometry(std::span<const Vec3> points);

double angle_defect(const HalfEdgeMesh& mesh, int vertex);

struct GaussBonnet {
    double total_defect = 0.0;
    double reference = 0.0;   // 2 pi chi
    double residual = 0.0;    // total_defect - reference
};

GaussBonnet gauss_bonnet_check(const HalfEdgeMesh& mesh);

/// Great-circle arc on the unit sphere, rotating `start` about `axis` by `length`.
struct LinkArc {
    Vec3 start = Vec3::Zero();
    Vec3 end = Vec3::Zero();
    Vec3 axis = Vec3::Zero();
    double length = 0.0;
    int face = -1;
    bool split = false;  // half of a corner of angle >= pi
};

/// Spherical polygon cut out of the vertex star by the unit sphere.
struct VertexLink {
    int vertex = -1;
    std::vector<LinkArc> arcs;  // closed chain: arcs[i].end == arcs[i+1].start
};

VertexLink vertex_link(const HalfEdgeMesh& mesh, int vertex, double link_tol = 1e-9);

struct LinkVerdict {
    enum class Witness { None, DegenerateArc, CoincidentVertices, AdjacentOverlap, ArcCrossing, Undefined };

    bool embedded = true;
    Witness witness = Witness::None;
    int arc_a = -1;
    int arc_b = -1;
};

const char* to_string(LinkVerdict::Witness w);

/// Simple-curve test for a vertex link.
LinkVerdict link_is_embedded(const VertexLink& link, const ToleranceProfile& tol);

struct FacePlanarity {
    double max_deviation = 0.0;
    double relative_deviation = 0.0;
    bool planar = false;
    bool simple = false;
    std::string error;  // nonempty when the face is degenerate
};

struct FlatnessReport {
    ToleranceProfile tolerances;
    std::vector<FacePlanarity> faces;
    std::vector<double> vertex_defects;  // NaN where a corner angle is undefined
    std::vector<LinkVerdict> links;
    GaussBonnet gauss_bonnet;

    bool all_planar() const;
    bool all_flat() const;
    bool all_links_embedded() const;
    double max_relative_deviation() const;
    double max_abs_defect() const;
    int link_failures() const;
    /// Planar faces, zero defects and embedded vertex figures.
    bool locally_isometric_flat() const { return all_planar() && all_flat() && all_links_embedded(); }
};

/// Per-cell checks in cell index order. Requires a closed manifold mesh.
FlatnessReport flatness_report(const HalfEdgeMesh& mesh, const ToleranceProfile& tol);

}  // namespace flatcert
