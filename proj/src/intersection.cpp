#include "flatcert/intersection.hpp"

#include <algorithm>
#include <numeric>

#include "flatcert/predicates.hpp"

namespace flatcert {

namespace {

using Tri = std::array<Vec3, 3>;

// Axis whose removal keeps the triangle non-degenerate in 2D (exact test).
int projection_axis(const Tri& t)
{
    const Vec3 n = (t[1] - t[0]).cross(t[2] - t[0]);
    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int a, int b) { return std::abs(n[a]) > std::abs(n[b]); });
    for (int axis : order)
        if (orient2d(drop_axis(t[0], axis), drop_axis(t[1], axis), drop_axis(t[2], axis)) != 0) return axis;
    return -1;
}

bool on_segment_2d(const Vec2& a, const Vec2& b, const Vec2& x)
{
    return std::min(a[0], b[0]) <= x[0] && x[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= x[1] &&
           x[1] <= std::max(a[1], b[1]);
}

bool segments_meet_2d(const Vec2& p, const Vec2& q, const Vec2& r, const Vec2& s)
{
    const int o1 = orient2d(p, q, r), o2 = orient2d(p, q, s);
    const int o3 = orient2d(r, s, p), o4 = orient2d(r, s, q);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return (o1 == 0 && on_segment_2d(p, q, r)) || (o2 == 0 && on_segment_2d(p, q, s)) ||
           (o3 == 0 && on_segment_2d(r, s, p)) || (o4 == 0 && on_segment_2d(r, s, q));
}

bool point_in_triangle_2d(const Vec2& x, const std::array<Vec2, 3>& t)
{
    const int a = orient2d(t[0], t[1], x), b = orient2d(t[1], t[2], x), c = orient2d(t[2], t[0], x);
    return !((a > 0 || b > 0 || c > 0) && (a < 0 || b < 0 || c < 0));
}

std::array<Vec2, 3> project(const Tri& t, int axis)
{
    return {drop_axis(t[0], axis), drop_axis(t[1], axis), drop_axis(t[2], axis)};
}

bool segment_meets_triangle_2d(const Vec2& p, const Vec2& q, const std::array<Vec2, 3>& t)
{
    if (point_in_triangle_2d(p, t) || point_in_triangle_2d(q, t)) return true;
    for (int i = 0; i < 3; ++i)
        if (segments_meet_2d(p, q, t[i], t[(i + 1) % 3])) return true;
    return false;
}

bool coplanar_triangles_meet(const Tri& t1, const Tri& t2)
{
    const int axis = projection_axis(t1);
    const auto a = project(t1, axis), b = project(t2, axis);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (segments_meet_2d(a[i], a[(i + 1) % 3], b[j], b[(j + 1) % 3])) return true;
    return point_in_triangle_2d(a[0], b) || point_in_triangle_2d(b[0], a);
}

bool mixed(const int s[3])
{
    return (s[0] > 0 || s[1] > 0 || s[2] > 0) && (s[0] < 0 || s[1] < 0 || s[2] < 0);
}

ContactKind contact_kind(const Tri& t1, const Tri& t2)
{
    int s1[3], s2[3];
    for (int i = 0; i < 3; ++i) {
        s1[i] = orient3d(t2[0], t2[1], t2[2], t1[i]);
        s2[i] = orient3d(t1[0], t1[1], t1[2], t2[i]);
    }
    if (s2[0] == 0 && s2[1] == 0 && s2[2] == 0) return ContactKind::Coplanar;
    return (mixed(s1) && mixed(s2)) ? ContactKind::Crossing : ContactKind::Touching;
}

int shared_corners(const SoupTriangle& a, const SoupTriangle& b, int* only_a, int* only_b)
{
    int shared = 0;
    for (int i = 0; i < 3; ++i) {
        only_a[i] = 1;
        only_b[i] = 1;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (a.corners[i] == b.corners[j]) {
                ++shared;
                only_a[i] = 0;
                only_b[j] = 0;
            }
    return shared;
}

bool source_faces_adjacent(const TriangleSoup& soup, int fa, int fb)
{
    if (fa == fb) return true;
    const auto& a = soup.face_vertices[fa];
    const auto& b = soup.face_vertices[fb];
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        if (a[i] < b[j]) ++i;
        else ++j;
    }
    return false;
}

struct PairOutcome {
    bool hit = false;
    bool local = false;
    ContactKind kind = ContactKind::Crossing;
};

PairOutcome evaluate_pair(const TriangleSoup& soup, int i, int j)
{
    const SoupTriangle& a = soup.triangles[i];
    const SoupTriangle& b = soup.triangles[j];
    int only_a[3], only_b[3];
    const int shared = shared_corners(a, b, only_a, only_b);

    if (shared == 0) {
        const auto kind = triangles_intersect(a.points, b.points);
        if (!kind) return {};
        return {true, source_faces_adjacent(soup, a.source_face, b.source_face), *kind};
    }

    bool overlap = false;
    if (shared == 1) {
        // A convex intersection containing the shared vertex grows beyond it
        // iff the opposite edge of one triangle meets the other triangle.
        Vec3 ea[2], eb[2];
        for (int k = 0, n = 0; k < 3; ++k)
            if (only_a[k]) ea[n++] = a.points[k];
        for (int k = 0, n = 0; k < 3; ++k)
            if (only_b[k]) eb[n++] = b.points[k];
        overlap = segment_meets_triangle(ea[0], ea[1], b.points) || segment_meets_triangle(eb[0], eb[1], a.points);
    } else if (shared == 2) {
        // Sharing an edge: extra overlap only when folded flat onto one side.
        Vec3 apex_a, apex_b, edge[2];
        for (int k = 0, n = 0; k < 3; ++k) {
            if (only_a[k]) apex_a = a.points[k];
            else edge[n++] = a.points[k];
        }
        for (int k = 0; k < 3; ++k)
            if (only_b[k]) apex_b = b.points[k];
        if (orient3d(edge[0], edge[1], apex_a, apex_b) == 0) {
            const int axis = projection_axis(a.points);
            overlap = orient2d(drop_axis(edge[0], axis), drop_axis(edge[1], axis), drop_axis(apex_a, axis)) ==
                      orient2d(drop_axis(edge[0], axis), drop_axis(edge[1], axis), drop_axis(apex_b, axis));
        }
    } else {
        overlap = true;
    }
    if (!overlap) return {};
    return {true, true, contact_kind(a.points, b.points)};
}

void record(const TriangleSoup& soup, int i, int j, SelfIntersections& out)
{
    if (i > j) std::swap(i, j);
    const PairOutcome r = evaluate_pair(soup, i, j);
    if (!r.hit) return;
    (r.local ? out.local_overlaps : out.pairs).push_back({i, j, r.kind});
}

void finish(SelfIntersections& out)
{
    std::sort(out.pairs.begin(), out.pairs.end());
    std::sort(out.local_overlaps.begin(), out.local_overlaps.end());
}

Eigen::AlignedBox3d triangle_box(const SoupTriangle& t)
{
    Eigen::AlignedBox3d box(t.points[0]);
    box.extend(t.points[1]);
    box.extend(t.points[2]);
    return box;
}

int build_node(BoundingHierarchy& h, const std::vector<Eigen::AlignedBox3d>& boxes,
               const std::vector<Vec3>& centers, int begin, int end)
{
    const int id = static_cast<int>(h.nodes.size());
    h.nodes.push_back({});
    Eigen::AlignedBox3d box = boxes[h.order[begin]];
    for (int k = begin + 1; k < end; ++k) box.extend(boxes[h.order[k]]);
    h.nodes[id].box = box;
    h.nodes[id].begin = begin;
    h.nodes[id].end = end;
    if (end - begin <= h.leaf_size) return id;

    int axis = 0;
    box.sizes().maxCoeff(&axis);
    const int mid = begin + (end - begin) / 2;
    std::nth_element(h.order.begin() + begin, h.order.begin() + mid, h.order.begin() + end, [&](int a, int b) {
        if (centers[a][axis] != centers[b][axis]) return centers[a][axis] < centers[b][axis];
        return a < b;
    });
    const int left = build_node(h, boxes, centers, begin, mid);
    const int right = build_node(h, boxes, centers, mid, end);
    h.nodes[id].left = left;
    h.nodes[id].right = right;
    return id;
}

void collide(const TriangleSoup& soup, const BoundingHierarchy& h, int na, int nb, SelfIntersections& out)
{
    const auto& A = h.nodes[na];
    const auto& B = h.nodes[nb];
    if (na == nb) {
        if (A.is_leaf()) {
            for (int x = A.begin; x < A.end; ++x)
                for (int y = x + 1; y < A.end; ++y) record(soup, h.order[x], h.order[y], out);
            return;
        }
        collide(soup, h, A.left, A.left, out);
        collide(soup, h, A.right, A.right, out);
        collide(soup, h, A.left, A.right, out);
        return;
    }
    if (!A.box.intersects(B.box)) return;
    if (A.is_leaf() && B.is_leaf()) {
        for (int x = A.begin; x < A.end; ++x)
            for (int y = B.begin; y < B.end; ++y) record(soup, h.order[x], h.order[y], out);
        return;
    }
    if (B.is_leaf() || (!A.is_leaf() && A.end - A.begin >= B.end - B.begin)) {
        collide(soup, h, A.left, nb, out);
        collide(soup, h, A.right, nb, out);
    } else {
        collide(soup, h, na, B.left, out);
        collide(soup, h, na, B.right, out);
    }
}

}  // namespace

TriangleSoup TriangleSoup::from_refinement(const Refinement& refinement)
{
    TriangleSoup soup;
    const auto& pos = refinement.derived.vertices();
    const auto& faces = refinement.derived.faces();
    for (std::size_t t = 0; t < faces.size(); ++t) {
        const Face& f = faces[t];
        SoupTriangle tri{{pos[f[0]], pos[f[1]], pos[f[2]]}, refinement.triangle_source_face[t], {f[0], f[1], f[2]}};
        if (projection_axis(tri.points) < 0)
            throw GeometryError("triangle " + std::to_string(t) + " of source face " +
                                std::to_string(tri.source_face) + " has zero area");
        soup.triangles.push_back(tri);
    }
    for (const Face& f : refinement.source.faces()) {
        std::vector<int> sorted = f;
        std::sort(sorted.begin(), sorted.end());
        soup.face_vertices.push_back(std::move(sorted));
    }
    return soup;
}

TriangleSoup TriangleSoup::from_triangles(const std::vector<std::array<Vec3, 3>>& tris)
{
    TriangleSoup soup;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
        if (projection_axis(tris[t]) < 0) throw GeometryError("triangle " + std::to_string(t) + " has zero area");
        soup.triangles.push_back({tris[t], t, {3 * t, 3 * t + 1, 3 * t + 2}});
        soup.face_vertices.push_back({3 * t, 3 * t + 1, 3 * t + 2});
    }
    return soup;
}

BoundingHierarchy build_hierarchy(const TriangleSoup& soup, int leaf_size)
{
    if (soup.triangles.empty()) throw std::invalid_argument("cannot build a hierarchy over an empty soup");
    if (leaf_size < 1) throw std::invalid_argument("leaf size must be positive");
    BoundingHierarchy h;
    h.leaf_size = leaf_size;
    const int n = static_cast<int>(soup.triangles.size());
    std::vector<Eigen::AlignedBox3d> boxes;
    std::vector<Vec3> centers;
    boxes.reserve(n);
    for (const auto& t : soup.triangles) {
        boxes.push_back(triangle_box(t));
        centers.push_back(boxes.back().center());
    }
    h.order.resize(n);
    std::iota(h.order.begin(), h.order.end(), 0);
    build_node(h, boxes, centers, 0, n);
    return h;
}

const char* to_string(ContactKind kind)
{
    switch (kind) {
    case ContactKind::Crossing: return "crossing";
    case ContactKind::Touching: return "touching";
    case ContactKind::Coplanar: return "coplanar";
    }
    return "unknown";
}

bool segment_meets_triangle(const Vec3& p, const Vec3& q, const Tri& t)
{
    const int sp = orient3d(t[0], t[1], t[2], p);
    const int sq = orient3d(t[0], t[1], t[2], q);
    if (sp == 0 && sq == 0) {
        const int axis = projection_axis(t);
        return segment_meets_triangle_2d(drop_axis(p, axis), drop_axis(q, axis), project(t, axis));
    }
    if (sp * sq > 0) return false;
    int o[3];
    for (int i = 0; i < 3; ++i) o[i] = orient3d(p, q, t[i], t[(i + 1) % 3]);
    return !mixed(o);
}

std::optional<ContactKind> triangles_intersect(const Tri& t1, const Tri& t2)
{
    int s1[3], s2[3];
    for (int i = 0; i < 3; ++i) {
        s1[i] = orient3d(t2[0], t2[1], t2[2], t1[i]);
        s2[i] = orient3d(t1[0], t1[1], t1[2], t2[i]);
    }
    auto one_side = [](const int s[3]) {
        return (s[0] > 0 && s[1] > 0 && s[2] > 0) || (s[0] < 0 && s[1] < 0 && s[2] < 0);
    };
    if (one_side(s1) || one_side(s2)) return std::nullopt;

    if (s2[0] == 0 && s2[1] == 0 && s2[2] == 0) {
        if (!coplanar_triangles_meet(t1, t2)) return std::nullopt;
        return ContactKind::Coplanar;
    }

    // Non-coplanar: the intersection is a segment on the planes' common line
    // whose endpoints lie on an edge of one of the triangles.
    bool meet = false;
    for (int i = 0; i < 3 && !meet; ++i)
        meet = segment_meets_triangle(t1[i], t1[(i + 1) % 3], t2) || segment_meets_triangle(t2[i], t2[(i + 1) % 3], t1);
    if (!meet) return std::nullopt;
    return (mixed(s1) && mixed(s2)) ? ContactKind::Crossing : ContactKind::Touching;
}

SelfIntersections self_intersections(const TriangleSoup& soup, const BoundingHierarchy& hierarchy)
{
    SelfIntersections out;
    if (!hierarchy.nodes.empty()) collide(soup, hierarchy, 0, 0, out);
    finish(out);
    return out;
}

SelfIntersections self_intersections_brute_force(const TriangleSoup& soup)
{
    SelfIntersections out;
    const int n = static_cast<int>(soup.triangles.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) record(soup, i, j, out);
    finish(out);
    return out;
}

const char* to_string(ImmersionClass c)
{
    switch (c) {
    case ImmersionClass::Embedded: return "embedded";
    case ImmersionClass::Immersed: return "immersed";
    case ImmersionClass::NotAnImmersion: return "not-an-immersion";
    }
    return "unknown";
}

ImmersionClass classify_immersion(bool vertex_figures_embedded, const std::vector<IntersectionPair>& pairs)
{
    if (!vertex_figures_embedded) return ImmersionClass::NotAnImmersion;
    return pairs.empty() ? ImmersionClass::Embedded : ImmersionClass::Immersed;
}

}  // namespace flatcert
