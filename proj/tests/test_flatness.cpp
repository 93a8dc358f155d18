#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

#include <Eigen/Geometry>

#include "flatcert/corpus.hpp"
#include "flatcert/flatness.hpp"

using namespace flatcert;
using std::numbers::pi;

namespace {

HalfEdgeMesh mesh_of(const GeneratorSpec& spec) { return *check_closed_manifold(generate(spec)).mesh; }

Eigen::Matrix3d random_rotation(std::mt19937& rng)
{
    std::normal_distribution<double> g;
    Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
    return q.normalized().toRotationMatrix();
}

// Least squares plane by searching normals on a (theta, phi) grid, refined
// around the best cell. Returns the max deviation at the best normal.
double plane_fit_by_search(const std::vector<Vec3>& pts)
{
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());
    auto normal_at = [](double th, double ph) { return Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)); };
    auto energy = [&](const Vec3& n) {
        double e = 0;
        for (const Vec3& p : pts) e += std::pow(n.dot(p - centroid), 2);
        return e;
    };
    double best_th = 0, best_ph = 0, best = energy(normal_at(0, 0));
    double span_th = pi / 2, span_ph = pi;
    for (int level = 0; level < 6; ++level) {
        const double c_th = best_th, c_ph = best_ph;
        for (int i = -100; i <= 100; ++i)
            for (int j = -100; j <= 100; ++j) {
                const double th = c_th + span_th * i / 100.0, ph = c_ph + span_ph * j / 100.0;
                const double e = energy(normal_at(th, ph));
                if (e < best) best = e, best_th = th, best_ph = ph;
            }
        span_th /= 20;
        span_ph /= 20;
    }
    const Vec3 n = normal_at(best_th, best_ph);
    double dev = 0;
    for (const Vec3& p : pts) dev = std::max(dev, std::abs(n.dot(p - centroid)));
    return dev;
}

Vec3 arc_point(const LinkArc& a, double t)
{
    const Vec3 side = a.axis.normalized().cross(a.start);
    return a.start * std::cos(t * a.length) + side * std::sin(t * a.length);
}

// Dense sampling plus local refinement of the closest sample pairs: a link
// fails to be simple if two arcs meet anywhere except near the endpoint shared
// by consecutive arcs.
bool link_simple_by_sampling(const VertexLink& link)
{
    const int n = static_cast<int>(link.arcs.size());
    constexpr int samples = 60;
    for (int i = 0; i < n; ++i) {
        if (link.arcs[i].length < 1e-9) return false;
        for (int j = i + 1; j < n; ++j) {
            const bool next = j == i + 1, prev = i == 0 && j == n - 1;
            auto allowed = [&](double ti, double tj) {
                if (ti < 0 || ti > 1 || tj < 0 || tj > 1) return false;
                if (next && ti > 0.8 && tj < 0.2) return false;
                if (prev && ti < 0.2 && tj > 0.8) return false;
                return true;
            };
            auto dist = [&](double ti, double tj) {
                return (arc_point(link.arcs[i], ti) - arc_point(link.arcs[j], tj)).norm();
            };
            std::vector<std::tuple<double, double, double>> seeds;
            for (int a = 0; a <= samples; ++a)
                for (int b = 0; b <= samples; ++b) {
                    const double ti = static_cast<double>(a) / samples, tj = static_cast<double>(b) / samples;
                    if (allowed(ti, tj)) seeds.emplace_back(dist(ti, tj), ti, tj);
                }
            const std::size_t keep = std::min<std::size_t>(8, seeds.size());
            std::partial_sort(seeds.begin(), seeds.begin() + keep, seeds.end());
            for (std::size_t k = 0; k < keep; ++k) {
                auto [d, ti, tj] = seeds[k];
                for (double step = 1.0 / samples; step > 1e-13; step *= 0.6)
                    for (int a = -2; a <= 2; ++a)
                        for (int b = -2; b <= 2; ++b) {
                            const double ui = ti + a * step, uj = tj + b * step;
                            if (!allowed(ui, uj)) continue;
                            const double e = dist(ui, uj);
                            if (e < d) d = e, ti = ui, tj = uj;
                        }
                if (d < 1e-7) return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("ToleranceProfile::validate")
{
    CHECK_NOTHROW(ToleranceProfile{}.validate());
    CHECK_THROWS_AS((ToleranceProfile{0.0, 1e-8, 1e-9}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ToleranceProfile{1e-8, -1.0, 1e-9}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ToleranceProfile{1e-8, 1e-8, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("face_plane_fit")
{
    SUBCASE("unit square")
    {
        const std::vector<Vec3> sq = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
        const PlaneFit fit = face_plane_fit(sq);
        CHECK(fit.max_deviation <= 1e-15);
        CHECK(std::abs(fit.normal.z()) == doctest::Approx(1.0));
        CHECK(fit.diameter == doctest::Approx(std::sqrt(2.0)));
    }
    SUBCASE("lifted corner matches a brute-force normal search")
    {
        const std::vector<Vec3> sq = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0.1}, {0, 1, 0}};
        const PlaneFit fit = face_plane_fit(sq);
        const double oracle = plane_fit_by_search(sq);
        CHECK(fit.max_deviation == doctest::Approx(oracle).epsilon(1e-6));
        // Frozen from an independent eigen-decomposition, confirmed by the search above.
        CHECK(fit.max_deviation == doctest::Approx(0.025061798260000843).epsilon(1e-12));
        CHECK(fit.relative_deviation == doctest::Approx(fit.max_deviation / fit.diameter));
    }
    SUBCASE("random triangles lie in their plane")
    {
        std::mt19937 rng(2);
        std::uniform_real_distribution<double> u(-10, 10);
        for (int i = 0; i < 500; ++i) {
            const std::vector<Vec3> tri = {{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}};
            const PlaneFit fit = face_plane_fit(tri);
            CHECK(fit.relative_deviation < 1e-14);
        }
    }
    SUBCASE("random non-planar quads agree with the search")
    {
        std::mt19937 rng(4);
        std::uniform_real_distribution<double> u(-1, 1);
        for (int i = 0; i < 5; ++i) {
            std::vector<Vec3> quad;
            for (int k = 0; k < 4; ++k) quad.emplace_back(u(rng), u(rng), 0.3 * u(rng));
            CHECK(face_plane_fit(quad).max_deviation == doctest::Approx(plane_fit_by_search(quad)).epsilon(1e-5));
        }
    }
    SUBCASE("collinear points are rejected")
    {
        const std::vector<Vec3> line = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}};
        CHECK_THROWS_AS(face_plane_fit(line), GeometryError);
    }
}

TEST_CASE("corner_angle")
{
    CHECK(corner_angle({1, 0, 0}, {0, 0, 0}, {0, 1, 0}) == doctest::Approx(pi / 2));
    CHECK(corner_angle({-1, 0, 0}, {0, 0, 0}, {1, 0, 0}) == doctest::Approx(pi));
    CHECK(corner_angle({1, 0, 0}, {0, 0, 0}, {0.5, std::sqrt(3.0) / 2, 0}) == doctest::Approx(pi / 3));
    CHECK_THROWS_AS(corner_angle({0, 0, 0}, {0, 0, 0}, {1, 0, 0}), GeometryError);

    SUBCASE("invariant under rigid motion and scale")
    {
        std::mt19937 rng(8);
        std::uniform_real_distribution<double> u(-5, 5);
        for (int i = 0; i < 500; ++i) {
            const Vec3 a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng)), c(u(rng), u(rng), u(rng));
            const Eigen::Matrix3d r = random_rotation(rng);
            const Vec3 t(u(rng), u(rng), u(rng));
            const double s = std::exp(u(rng) / 2);
            const double before = corner_angle(a, b, c);
            const double after = corner_angle(s * (r * a) + t, s * (r * b) + t, s * (r * c) + t);
            CHECK(after == doctest::Approx(before).epsilon(1e-9));
        }
    }
}

TEST_CASE("face_geometry on a non-convex pentagon")
{
    // Arrow-shaped pentagon with one reflex corner at (1, 0.5).
    const std::vector<Vec3> pts = {{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {1, 0.5, 0}, {0, 2, 0}};
    const FaceGeometry g = face_geometry(pts);
    CHECK(g.simple);
    double sum = 0;
    for (double a : g.interior_angles) sum += a;
    CHECK(sum == doctest::Approx(3 * pi));
    CHECK(g.interior_angles[3] > pi);
    CHECK(g.interior_angles[3] == doctest::Approx(2 * pi - 2 * std::atan2(1.0, 1.5)));

    const std::vector<Vec3> bowtie = {{0, 0, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}};
    CHECK_FALSE(face_geometry(bowtie).simple);
}

TEST_CASE("angle defects of the platonic meshes")
{
    const HalfEdgeMesh cube = mesh_of({GeneratorKind::Cube, {}});
    for (int v = 0; v < cube.num_vertices(); ++v) CHECK(angle_defect(cube, v) == doctest::Approx(pi / 2));

    const HalfEdgeMesh tet = mesh_of({GeneratorKind::Tetrahedron, {}});
    for (int v = 0; v < tet.num_vertices(); ++v) CHECK(angle_defect(tet, v) == doctest::Approx(pi));

    const HalfEdgeMesh ico = mesh_of({GeneratorKind::Icosahedron, {}});
    for (int v = 0; v < ico.num_vertices(); ++v) CHECK(angle_defect(ico, v) == doctest::Approx(pi / 3));
}

TEST_CASE("gauss_bonnet_check")
{
    const GaussBonnet cube = gauss_bonnet_check(mesh_of({GeneratorKind::Cube, {}}));
    CHECK(cube.reference == doctest::Approx(4 * pi));
    CHECK(std::abs(cube.residual) <= 1e-10 * 24);

    const GaussBonnet tet = gauss_bonnet_check(mesh_of({GeneratorKind::Tetrahedron, {}}));
    CHECK(tet.total_defect == doctest::Approx(4 * pi));

    for (const auto& spec : default_corpus()) {
        CAPTURE(spec.name());
        const HalfEdgeMesh mesh = mesh_of(spec);
        const GaussBonnet gb = gauss_bonnet_check(mesh);
        CHECK(gb.reference == doctest::Approx(2 * pi * expected_profile(spec).chi));
        CHECK(std::abs(gb.residual) <= 1e-10 * static_cast<double>(mesh.half_edges().size()));
    }
}

TEST_CASE("vertex_link shapes")
{
    SUBCASE("cube vertex: three quarter arcs")
    {
        const HalfEdgeMesh cube = mesh_of({GeneratorKind::Cube, {}});
        const VertexLink link = vertex_link(cube, 0);
        REQUIRE(link.arcs.size() == 3);
        for (const LinkArc& a : link.arcs) CHECK(a.length == doctest::Approx(pi / 2));
        CHECK(link_is_embedded(link, {}).embedded);
    }
    SUBCASE("flat vertex of the folded torus: one great circle")
    {
        const GeneratorSpec spec{GeneratorKind::FoldedFlatTorus, {4, 4, 2}};
        const HalfEdgeMesh mesh = mesh_of(spec);
        const auto folds = folded_torus_fold_vertices(spec);
        int checked = 0;
        for (int v = 0; v < mesh.num_vertices(); ++v) {
            if (std::find(folds.begin(), folds.end(), v) != folds.end()) continue;
            const VertexLink link = vertex_link(mesh, v);
            REQUIRE(link.arcs.size() == 4);
            double total = 0;
            for (const LinkArc& a : link.arcs) {
                CHECK(a.length == doctest::Approx(pi / 2));
                CHECK(std::abs(a.axis.normalized().dot(link.arcs[0].axis.normalized())) == doctest::Approx(1.0));
                total += a.length;
            }
            CHECK(total == doctest::Approx(2 * pi));
            CHECK(link_is_embedded(link, {}).embedded);
            ++checked;
        }
        CHECK(checked == 4);
    }
    SUBCASE("fold vertex: arcs double back")
    {
        const GeneratorSpec spec{GeneratorKind::FoldedFlatTorus, {4, 4, 2}};
        const HalfEdgeMesh mesh = mesh_of(spec);
        for (int v : folded_torus_fold_vertices(spec)) {
            const VertexLink link = vertex_link(mesh, v);
            CHECK_FALSE(link_simple_by_sampling(link));
            CHECK_FALSE(link_is_embedded(link, {}).embedded);
        }
    }
}

TEST_CASE("link_is_embedded agrees with dense sampling on the corpus")
{
    for (const auto& spec : default_corpus()) {
        CAPTURE(spec.name());
        const HalfEdgeMesh mesh = mesh_of(spec);
        for (int v = 0; v < mesh.num_vertices(); ++v) {
            CAPTURE(v);
            const VertexLink link = vertex_link(mesh, v);
            CHECK(link_is_embedded(link, {}).embedded == link_simple_by_sampling(link));
        }
    }
}

TEST_CASE("doubled cones")
{
    const HalfEdgeMesh once = mesh_of({GeneratorKind::DoubledCone, {360}});
    const HalfEdgeMesh twice = mesh_of({GeneratorKind::DoubledCone, {720}});
    // Vertex 0 is the flattened apex.
    CHECK(angle_defect(once, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(angle_defect(twice, 0) == doctest::Approx(-2 * pi));
    CHECK(link_is_embedded(vertex_link(once, 0), {}).embedded);
    const LinkVerdict v = link_is_embedded(vertex_link(twice, 0), {});
    CHECK_FALSE(v.embedded);
    CHECK(v.witness != LinkVerdict::Witness::None);
}

TEST_CASE("flatness_report")
{
    const FlatnessReport cube = flatness_report(mesh_of({GeneratorKind::Cube, {}}), {});
    CHECK(cube.all_planar());
    CHECK_FALSE(cube.all_flat());
    CHECK(cube.all_links_embedded());
    CHECK(cube.faces.size() == 6);
    CHECK(cube.vertex_defects.size() == 8);
    CHECK(cube.links.size() == 8);
    CHECK(cube.max_abs_defect() == doctest::Approx(pi / 2));

    const GeneratorSpec spec{GeneratorKind::FoldedFlatTorus, {4, 4, 2}};
    const FlatnessReport folded = flatness_report(mesh_of(spec), {});
    CHECK(folded.all_planar());
    CHECK(folded.all_flat());
    CHECK(folded.max_abs_defect() < 1e-12);
    CHECK(folded.link_failures() == static_cast<int>(folded_torus_fold_vertices(spec).size()));
    CHECK_FALSE(folded.locally_isometric_flat());
}

TEST_CASE("flatness_report is invariant under rigid motion and scale")
{
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(-3, 3);
    for (const auto& spec : default_corpus()) {
        CAPTURE(spec.name());
        const CellComplex c = generate(spec);
        const FlatnessReport base = flatness_report(*check_closed_manifold(c).mesh, {});
        const Eigen::Matrix3d r = random_rotation(rng);
        const Vec3 t(u(rng), u(rng), u(rng));
        const double s = 2.5;
        std::vector<Vec3> moved;
        for (const Vec3& p : c.vertices()) moved.push_back(s * (r * p) + t);
        const FlatnessReport after = flatness_report(*check_closed_manifold(CellComplex::build(moved, c.faces())).mesh, {});
        for (std::size_t v = 0; v < base.vertex_defects.size(); ++v)
            CHECK(after.vertex_defects[v] == doctest::Approx(base.vertex_defects[v]).scale(1.0).epsilon(1e-9));
        for (std::size_t f = 0; f < base.faces.size(); ++f)
            CHECK(std::abs(after.faces[f].relative_deviation - base.faces[f].relative_deviation) <= 1e-12);
        CHECK(after.link_failures() == base.link_failures());
    }
}
