#include "flatcert/flatness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <Eigen/Eigenvalues>

#include "flatcert/predicates.hpp"

namespace flatcert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool segments_intersect(const Vec2& p, const Vec2& q, const Vec2& r, const Vec2& s)
{
    const int o1 = orient2d(p, q, r), o2 = orient2d(p, q, s);
    const int o3 = orient2d(r, s, p), o4 = orient2d(r, s, q);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    auto on_segment = [](const Vec2& a, const Vec2& b, const Vec2& x) {
        return std::min(a[0], b[0]) <= x[0] && x[0] <= std::max(a[0], b[0]) &&
               std::min(a[1], b[1]) <= x[1] && x[1] <= std::max(a[1], b[1]);
    };
    return (o1 == 0 && on_segment(p, q, r)) || (o2 == 0 && on_segment(p, q, s)) ||
           (o3 == 0 && on_segment(r, s, p)) || (o4 == 0 && on_segment(r, s, q));
}

bool polygon_is_simple(const std::vector<Vec2>& poly)
{
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        // Consecutive edges may only share their common vertex: reject spikes.
        const Vec2& c = poly[(i + 2) % n];
        if (orient2d(a, b, c) == 0) {
            const double dot = (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1]);
            if (dot > 0) return false;
        }
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) return false;
        }
    }
    return true;
}

Vec3 unit_or_throw(const Vec3& v, const char* what)
{
    const double len = v.norm();
    if (!(len > 0.0)) throw GeometryError(what);
    return v / len;
}

LinkVerdict failure(LinkVerdict::Witness w, int a, int b)
{
    return {false, w, a, b};
}

int tol_sign(double x, double tol)
{
    if (x > tol) return 1;
    if (x < -tol) return -1;
    return 0;
}

double circle_parameter(const Vec3& origin, const Vec3& axis, const Vec3& x)
{
    double phi = std::atan2(origin.cross(x).dot(axis), origin.dot(x));
    if (phi < 0) phi += kTwoPi;
    return phi;
}

bool arcs_intersect(const LinkArc& a, const LinkArc& b, double tol)
{
    if (a.axis.cross(b.axis).norm() <= tol) {
        // Same great circle: compare parameter ranges along a.
        const bool same_sense = a.axis.dot(b.axis) > 0;
        double lo = circle_parameter(a.start, a.axis, same_sense ? b.start : b.end);
        if (lo > kTwoPi - tol) lo = 0.0;
        return lo <= a.length + tol || lo + b.length >= kTwoPi - tol;
    }
    const int s1 = tol_sign(a.start.cross(a.end).dot(b.start), tol);
    const int s2 = tol_sign(a.start.cross(a.end).dot(b.end), tol);
    const int s3 = tol_sign(b.start.cross(b.end).dot(a.start), tol);
    const int s4 = tol_sign(b.start.cross(b.end).dot(a.end), tol);
    return (s3 >= 0 && s4 <= 0 && s1 <= 0 && s2 >= 0) || (s3 <= 0 && s4 >= 0 && s1 >= 0 && s2 <= 0);
}

std::vector<Vec3> face_points(const HalfEdgeMesh& mesh, int f)
{
    const auto& pos = mesh.complex().vertices();
    std::vector<Vec3> pts;
    for (int v : mesh.complex().faces()[f]) pts.push_back(pos[v]);
    return pts;
}

VertexLink build_link(const HalfEdgeMesh& mesh, int vertex,
                      const std::vector<std::optional<FaceGeometry>>& geometry, double tol)
{
    const auto& pos = mesh.complex().vertices();
    const auto& faces = mesh.complex().faces();
    VertexLink link;
    link.vertex = vertex;

    for (const StarCorner& c : mesh.vertex_star(vertex)) {
        const auto& geom = geometry[c.face];
        if (!geom) throw GeometryError("incident face " + std::to_string(c.face) + " is degenerate");
        const Vec3 u = unit_or_throw(pos[c.from] - pos[vertex], "zero-length incident edge");
        const Vec3 w = unit_or_throw(pos[c.to] - pos[vertex], "zero-length incident edge");
        const double theta = geom->interior_angles[c.corner];

        if (theta < std::numbers::pi - tol) {
            const Vec3 cross = u.cross(w);
            const double s = cross.norm();
            link.arcs.push_back({u, w, s > 0 ? Vec3(cross / s) : Vec3::Zero(), theta, c.face, false});
            continue;
        }

        // Straight or reflex corner: the arc is not the minor one between its
        // endpoints, so orient it with the face plane and split it in two.
        const Face& face = faces[c.face];
        const int n = static_cast<int>(face.size());
        const int next = face[(c.corner + 1) % n];
        const Vec3 axis = (c.from == next) ? geom->ccw_normal : Vec3(-geom->ccw_normal);
        const Vec3 start = unit_or_throw(u - u.dot(axis) * axis, "corner edge normal to face plane");
        const Vec3 mid = std::cos(theta / 2) * start + std::sin(theta / 2) * axis.cross(start);
        link.arcs.push_back({u, mid, axis, theta / 2, c.face, true});
        link.arcs.push_back({mid, w, axis, theta / 2, c.face, true});
    }
    return link;
}

std::vector<std::optional<FaceGeometry>> all_face_geometry(const HalfEdgeMesh& mesh,
                                                           std::vector<std::string>* errors = nullptr)
{
    std::vector<std::optional<FaceGeometry>> out(mesh.num_faces());
    if (errors) errors->assign(mesh.num_faces(), {});
    for (int f = 0; f < mesh.num_faces(); ++f) {
        try {
            out[f] = face_geometry(face_points(mesh, f));
        } catch (const GeometryError& e) {
            if (errors) (*errors)[f] = e.what();
        }
    }
    return out;
}

double defect_from(const HalfEdgeMesh& mesh, int vertex,
                   const std::vector<std::optional<FaceGeometry>>& geometry)
{
    double sum = 0.0;
    for (const StarCorner& c : mesh.vertex_star(vertex)) {
        if (!geometry[c.face]) return kNaN;
        sum += geometry[c.face]->interior_angles[c.corner];
    }
    return kTwoPi - sum;
}

}  // namespace

void ToleranceProfile::validate() const
{
    if (!(planarity_tol > 0) || !(defect_tol > 0) || !(link_tol > 0))
        throw std::invalid_argument("tolerances must be strictly positive");
}

PlaneFit face_plane_fit(std::span<const Vec3> points)
{
    const std::size_t n = points.size();
    if (n < 3) throw GeometryError("plane fit needs at least 3 points");

    PlaneFit fit;
    for (const Vec3& p : points) fit.centroid += p;
    fit.centroid /= static_cast<double>(n);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            fit.diameter = std::max(fit.diameter, (points[i] - points[j]).norm());
    if (!(fit.diameter > 0.0)) throw GeometryError("face vertices coincide");

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Vec3& p : points) {
        const Vec3 d = p - fit.centroid;
        cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    const Vec3 axis = solver.eigenvectors().col(2).normalized();
    double off_axis = 0.0;
    for (const Vec3& p : points) {
        const Vec3 d = p - fit.centroid;
        off_axis = std::max(off_axis, (d - d.dot(axis) * axis).norm());
    }
    if (off_axis <= 1e-12 * fit.diameter) throw GeometryError("face vertices are collinear");

    fit.normal = solver.eigenvectors().col(0).normalized();
    for (const Vec3& p : points)
        fit.max_deviation = std::max(fit.max_deviation, std::abs((p - fit.centroid).dot(fit.normal)));
    fit.relative_deviation = fit.max_deviation / fit.diameter;
    return fit;
}

double corner_angle(const Vec3& prev, const Vec3& vertex, const Vec3& next)
{
    const Vec3 a = prev - vertex;
    const Vec3 b = next - vertex;
    if (a.squaredNorm() == 0.0 || b.squaredNorm() == 0.0) throw GeometryError("zero-length edge at corner");
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

FaceGeometry face_geometry(std::span<const Vec3> points)
{
    FaceGeometry g;
    g.fit = face_plane_fit(points);
    const int n = static_cast<int>(points.size());

    Vec3 e1 = g.fit.normal.unitOrthogonal();
    Vec3 e2 = g.fit.normal.cross(e1);
    std::vector<Vec2> flat;
    flat.reserve(n);
    double area2 = 0.0;
    for (const Vec3& p : points) {
        const Vec3 d = p - g.fit.centroid;
        flat.push_back({d.dot(e1), d.dot(e2)});
    }
    for (int i = 0; i < n; ++i) {
        const Vec2& a = flat[i];
        const Vec2& b = flat[(i + 1) % n];
        area2 += a[0] * b[1] - a[1] * b[0];
    }
    g.simple = n == 3 || polygon_is_simple(flat);
    if (g.simple && area2 == 0.0) throw GeometryError("face has zero area in its plane");
    g.ccw_normal = area2 >= 0 ? g.fit.normal : Vec3(-g.fit.normal);

    g.interior_angles.resize(n);
    for (int i = 0; i < n; ++i) {
        const Vec3& prev = points[(i + n - 1) % n];
        const Vec3& v = points[i];
        const Vec3& next = points[(i + 1) % n];
        double theta = corner_angle(prev, v, next);
        if (n > 3 && (v - prev).cross(next - v).dot(g.ccw_normal) < 0) theta = kTwoPi - theta;
        g.interior_angles[i] = theta;
    }
    return g;
}

double angle_defect(const HalfEdgeMesh& mesh, int vertex)
{
    double sum = 0.0;
    for (const StarCorner& c : mesh.vertex_star(vertex))
        sum += face_geometry(face_points(mesh, c.face)).interior_angles[c.corner];
    return kTwoPi - sum;
}

GaussBonnet gauss_bonnet_check(const HalfEdgeMesh& mesh)
{
    const auto geometry = all_face_geometry(mesh);
    GaussBonnet gb;
    for (int v = 0; v < mesh.num_vertices(); ++v) gb.total_defect += defect_from(mesh, v, geometry);
    gb.reference = kTwoPi * euler_characteristic(mesh);
    gb.residual = gb.total_defect - gb.reference;
    return gb;
}

VertexLink vertex_link(const HalfEdgeMesh& mesh, int vertex, double link_tol)
{
    std::vector<std::optional<FaceGeometry>> geometry(mesh.num_faces());
    for (const StarCorner& c : mesh.vertex_star(vertex))
        if (!geometry[c.face]) geometry[c.face] = face_geometry(face_points(mesh, c.face));
    return build_link(mesh, vertex, geometry, link_tol);
}

const char* to_string(LinkVerdict::Witness w)
{
    switch (w) {
    case LinkVerdict::Witness::None: return "none";
    case LinkVerdict::Witness::DegenerateArc: return "degenerate_arc";
    case LinkVerdict::Witness::CoincidentVertices: return "coincident_vertices";
    case LinkVerdict::Witness::AdjacentOverlap: return "adjacent_overlap";
    case LinkVerdict::Witness::ArcCrossing: return "arc_crossing";
    case LinkVerdict::Witness::Undefined: return "undefined";
    }
    return "unknown";
}

LinkVerdict link_is_embedded(const VertexLink& link, const ToleranceProfile& tol)
{
    const auto& arcs = link.arcs;
    const int m = static_cast<int>(arcs.size());
    const double eps = tol.link_tol;
    if (m < 2) return failure(LinkVerdict::Witness::DegenerateArc, 0, -1);

    for (int i = 0; i < m; ++i)
        if (arcs[i].length <= eps || arcs[i].axis.squaredNorm() == 0.0)
            return failure(LinkVerdict::Witness::DegenerateArc, i, -1);

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const Vec3& p = arcs[i].start;
            const Vec3& q = arcs[j].start;
            if (std::atan2(p.cross(q).norm(), p.dot(q)) <= eps)
                return failure(LinkVerdict::Witness::CoincidentVertices, i, j);
        }

    // Consecutive arcs meet at one point unless the second doubles back along
    // the first, i.e. it turns about the opposite axis.
    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        if ((arcs[i].axis + arcs[j].axis).norm() <= eps)
            return failure(LinkVerdict::Witness::AdjacentOverlap, i, j);
    }

    for (int i = 0; i < m; ++i)
        for (int j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;
            if (arcs_intersect(arcs[i], arcs[j], eps))
                return failure(LinkVerdict::Witness::ArcCrossing, i, j);
        }
    return {};
}

bool FlatnessReport::all_planar() const
{
    return std::all_of(faces.begin(), faces.end(), [](const FacePlanarity& f) { return f.planar; });
}

bool FlatnessReport::all_flat() const
{
    return std::all_of(vertex_defects.begin(), vertex_defects.end(),
                       [&](double d) { return std::abs(d) <= tolerances.defect_tol; });
}

bool FlatnessReport::all_links_embedded() const
{
    return link_failures() == 0;
}

double FlatnessReport::max_relative_deviation() const
{
    double m = 0.0;
    for (const FacePlanarity& f : faces) {
        if (!f.error.empty()) return kNaN;
        m = std::max(m, f.relative_deviation);
    }
    return m;
}

double FlatnessReport::max_abs_defect() const
{
    double m = 0.0;
    for (double d : vertex_defects) {
        if (std::isnan(d)) return kNaN;
        m = std::max(m, std::abs(d));
    }
    return m;
}

int FlatnessReport::link_failures() const
{
    return static_cast<int>(std::count_if(links.begin(), links.end(),
                                          [](const LinkVerdict& l) { return !l.embedded; }));
}

FlatnessReport flatness_report(const HalfEdgeMesh& mesh, const ToleranceProfile& tol)
{
    tol.validate();
    FlatnessReport report;
    report.tolerances = tol;

    std::vector<std::string> errors;
    const auto geometry = all_face_geometry(mesh, &errors);
    report.faces.resize(mesh.num_faces());
    for (int f = 0; f < mesh.num_faces(); ++f) {
        FacePlanarity& out = report.faces[f];
        if (!geometry[f]) {
            out.error = errors[f];
            out.max_deviation = out.relative_deviation = kNaN;
            continue;
        }
        out.max_deviation = geometry[f]->fit.max_deviation;
        out.relative_deviation = geometry[f]->fit.relative_deviation;
        out.simple = geometry[f]->simple;
        out.planar = out.relative_deviation <= tol.planarity_tol;
    }

    report.vertex_defects.resize(mesh.num_vertices());
    report.links.resize(mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        report.vertex_defects[v] = defect_from(mesh, v, geometry);
        try {
            report.links[v] = link_is_embedded(build_link(mesh, v, geometry, tol.link_tol), tol);
        } catch (const GeometryError&) {
            report.links[v] = failure(LinkVerdict::Witness::Undefined, -1, -1);
        }
    }

    report.gauss_bonnet.total_defect = 0.0;
    for (double d : report.vertex_defects) report.gauss_bonnet.total_defect += d;
    report.gauss_bonnet.reference = kTwoPi * euler_characteristic(mesh);
    report.gauss_bonnet.residual = report.gauss_bonnet.total_defect - report.gauss_bonnet.reference;
    return report;
}

}  // namespace flatcert
