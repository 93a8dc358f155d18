#include "flatcert/refine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "flatcert/predicates.hpp"

namespace flatcert {

namespace {

std::vector<Face> fan_from_lowest(const Face& face)
{
    const auto lowest = std::min_element(face.begin(), face.end()) - face.begin();
    const std::size_t n = face.size();
    std::vector<Face> tris;
    for (std::size_t i = 1; i + 1 < n; ++i)
        tris.push_back({face[lowest], face[(lowest + i) % n], face[(lowest + i + 1) % n]});
    return tris;
}

std::vector<Face> ear_clip(int face_index, const Face& face, const std::vector<Vec3>& pos,
                           const FaceGeometry& geom)
{
    const int n = static_cast<int>(face.size());
    const Vec3 e1 = geom.ccw_normal.unitOrthogonal();
    const Vec3 e2 = geom.ccw_normal.cross(e1);
    // In this basis the face winds counter-clockwise.
    std::vector<Vec2> flat(n);
    for (int i = 0; i < n; ++i) {
        const Vec3 d = pos[face[i]] - geom.fit.centroid;
        flat[i] = {d.dot(e1), d.dot(e2)};
    }
    const double area_floor = 1e-12 * geom.fit.diameter * geom.fit.diameter;

    std::vector<int> ring(n);
    for (int i = 0; i < n; ++i) ring[i] = i;

    std::vector<Face> tris;
    while (ring.size() > 3) {
        const int m = static_cast<int>(ring.size());
        int best = -1;
        for (int k = 0; k < m; ++k) {
            const int a = ring[(k + m - 1) % m], b = ring[k], c = ring[(k + 1) % m];
            if (orient2d(flat[a], flat[b], flat[c]) <= 0) continue;
            const double cross = (flat[b][0] - flat[a][0]) * (flat[c][1] - flat[a][1]) -
                                 (flat[b][1] - flat[a][1]) * (flat[c][0] - flat[a][0]);
            if (cross <= area_floor) continue;
            bool empty = true;
            for (int r : ring) {
                if (r == a || r == b || r == c) continue;
                if (orient2d(flat[a], flat[b], flat[r]) >= 0 && orient2d(flat[b], flat[c], flat[r]) >= 0 &&
                    orient2d(flat[c], flat[a], flat[r]) >= 0) {
                    empty = false;
                    break;
                }
            }
            if (!empty) continue;
            if (best < 0 || face[b] < face[ring[best]]) best = k;
        }
        if (best < 0) throw RefineError(face_index, "face " + std::to_string(face_index) + " has no valid ear");
        tris.push_back({face[ring[(best + m - 1) % m]], face[ring[best]], face[ring[(best + 1) % m]]});
        ring.erase(ring.begin() + best);
    }
    tris.push_back({face[ring[0]], face[ring[1]], face[ring[2]]});
    return tris;
}

}  // namespace

Refinement triangulate_faces(const CellComplex& complex, const ToleranceProfile& tol)
{
    Refinement r;
    r.source = complex;
    r.fallback.assign(complex.num_faces(), false);
    const auto& pos = complex.vertices();

    std::vector<Face> out;
    for (int f = 0; f < complex.num_faces(); ++f) {
        const Face& face = complex.faces()[f];
        std::vector<Face> tris;
        if (face.size() == 3) {
            tris.push_back(face);
        } else {
            std::vector<Vec3> pts;
            for (int v : face) pts.push_back(pos[v]);
            std::optional<FaceGeometry> geom;
            try {
                geom = face_geometry(pts);
            } catch (const GeometryError&) {
            }
            if (!geom || geom->fit.relative_deviation > tol.planarity_tol) {
                tris = fan_from_lowest(face);
                r.fallback[f] = true;
            } else {
                if (!geom->simple)
                    throw RefineError(f, "face " + std::to_string(f) + " is not simple in its plane");
                tris = ear_clip(f, face, pos, *geom);
            }
        }
        for (Face& t : tris) {
            out.push_back(std::move(t));
            r.triangle_source_face.push_back(f);
        }
    }

    r.vertex_origin.resize(complex.num_vertices());
    for (int v = 0; v < complex.num_vertices(); ++v) r.vertex_origin[v].weights = {{v, 1.0}};
    r.derived = CellComplex::build(complex.vertices(), std::move(out));
    return r;
}

Refinement barycentric_subdivision(const CellComplex& complex)
{
    if (!complex.is_triangulated())
        throw RefineError(-1, "barycentric subdivision needs a triangulated complex");

    Refinement r;
    r.source = complex;
    r.fallback.assign(complex.num_faces(), false);
    const auto& pos = complex.vertices();

    std::vector<Vec3> verts = pos;
    r.vertex_origin.resize(complex.num_vertices());
    for (int v = 0; v < complex.num_vertices(); ++v) r.vertex_origin[v].weights = {{v, 1.0}};

    std::map<EdgeKey, int> midpoint;
    for (const auto& [key, count] : edge_census(complex)) {
        midpoint[key] = static_cast<int>(verts.size());
        verts.push_back((pos[key.a] + pos[key.b]) / 2.0);
        r.vertex_origin.push_back({{{key.a, 0.5}, {key.b, 0.5}}});
    }

    std::vector<Face> out;
    for (int f = 0; f < complex.num_faces(); ++f) {
        const Face& t = complex.faces()[f];
        const int g = static_cast<int>(verts.size());
        verts.push_back((pos[t[0]] + pos[t[1]] + pos[t[2]]) / 3.0);
        r.vertex_origin.push_back({{{t[0], 1.0 / 3}, {t[1], 1.0 / 3}, {t[2], 1.0 / 3}}});
        for (int i = 0; i < 3; ++i) {
            const int a = t[i], b = t[(i + 1) % 3];
            const int m = midpoint.at(EdgeKey(a, b));
            out.push_back({a, m, g});
            out.push_back({m, b, g});
            r.triangle_source_face.push_back(f);
            r.triangle_source_face.push_back(f);
        }
    }
    r.derived = CellComplex::build(std::move(verts), std::move(out));
    return r;
}

double total_area(const CellComplex& complex)
{
    const auto& pos = complex.vertices();
    double area = 0.0;
    for (const Face& face : complex.faces()) {
        // Vector area; exact for planar simple polygons, convex or not.
        Vec3 sum = Vec3::Zero();
        const Vec3& origin = pos[face[0]];
        for (std::size_t i = 1; i + 1 < face.size(); ++i)
            sum += (pos[face[i]] - origin).cross(pos[face[i + 1]] - origin);
        area += 0.5 * sum.norm();
    }
    return area;
}

}  // namespace flatcert
