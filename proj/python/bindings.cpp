#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flatcert/certificate.hpp"
#include "flatcert/corpus.hpp"
#include "flatcert/mesh_io.hpp"
#include "flatcert/refine.hpp"

namespace py = pybind11;
using namespace flatcert;

namespace {

using Triple = std::array<double, 3>;

CellComplex from_lists(const std::vector<Triple>& vertices, std::vector<Face> faces, bool one_based)
{
    std::vector<Vec3> pts;
    pts.reserve(vertices.size());
    for (const auto& v : vertices) pts.emplace_back(v[0], v[1], v[2]);
    return one_based ? CellComplex::build_one_based(std::move(pts), std::move(faces))
                     : CellComplex::build(std::move(pts), std::move(faces));
}

std::vector<Triple> vertex_list(const CellComplex& c)
{
    std::vector<Triple> out;
    for (const Vec3& p : c.vertices()) out.push_back({p.x(), p.y(), p.z()});
    return out;
}

HalfEdgeMesh manifold_or_throw(const CellComplex& c)
{
    ManifoldCheck check = check_closed_manifold(c);
    if (!check.ok()) throw std::invalid_argument("not a closed manifold: " + check.diagnostics.front().describe());
    return std::move(*check.mesh);
}

ToleranceProfile tolerances(double planarity, double defect, double link)
{
    ToleranceProfile tol{planarity, defect, link};
    tol.validate();
    return tol;
}

py::object parse_json(const std::string& text)
{
    return py::module_::import("json").attr("loads")(text);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Certification of polyhedral surfaces: manifoldness, homology, flatness, immersion";
    m.attr("__version__") = kToolVersion;

    py::register_exception<ComplexError>(m, "ComplexError", PyExc_ValueError);
    py::register_exception<MeshIoError>(m, "MeshIoError", PyExc_ValueError);

    py::class_<CellComplex>(m, "CellComplex")
        .def(py::init(&from_lists), py::arg("vertices"), py::arg("faces"), py::arg("one_based") = false)
        .def_property_readonly("vertices", &vertex_list)
        .def_property_readonly("faces", &CellComplex::faces)
        .def_property_readonly("num_vertices", &CellComplex::num_vertices)
        .def_property_readonly("num_faces", &CellComplex::num_faces)
        .def("degree_census", &CellComplex::degree_census)
        .def("__repr__", [](const CellComplex& c) {
            return "<CellComplex V=" + std::to_string(c.num_vertices()) + " F=" + std::to_string(c.num_faces()) + ">";
        });

    m.def(
        "read_mesh",
        [](const std::vector<std::string>& paths, const std::string& format, bool zero_based) {
            return read_mesh(paths, format.empty() ? std::nullopt : std::optional(parse_format(format)), zero_based);
        },
        py::arg("paths"), py::arg("format") = "", py::arg("zero_based") = false);

    m.def(
        "write_mesh",
        [](const std::vector<std::string>& paths, const CellComplex& c, const std::string& format) {
            write_mesh(paths, c, format.empty() ? std::nullopt : std::optional(parse_format(format)));
        },
        py::arg("paths"), py::arg("complex"), py::arg("format") = "");

    m.def(
        "generate",
        [](const std::string& kind, const std::vector<int>& params) {
            return generate(GeneratorSpec::parse(kind, params));
        },
        py::arg("kind"), py::arg("params") = std::vector<int>{});

    m.def("edge_count", [](const CellComplex& c) { return edge_census(c).size(); });

    m.def("euler_characteristic", [](const CellComplex& c) { return euler_characteristic(manifold_or_throw(c)); });

    m.def("homology", [](const CellComplex& c) {
        const HalfEdgeMesh mesh = manifold_or_throw(c);
        const HomologyProfile p = homology_profile(mesh);
        std::vector<std::vector<long>> torsion(3);
        for (int k = 0; k < 3; ++k)
            for (const auto& t : p.torsion[k]) torsion[k].push_back(t.get_si());
        const SurfaceClass s = classify_surface(p, euler_characteristic(mesh), orientability(mesh).orientable);
        py::dict out;
        out["betti"] = std::vector<int>(p.betti.begin(), p.betti.end());
        out["torsion"] = torsion;
        out["surface"] = s.name ? py::object(py::str(*s.name)) : py::object(py::none());
        return out;
    });

    m.def(
        "angle_defects",
        [](const CellComplex& c) {
            const HalfEdgeMesh mesh = manifold_or_throw(c);
            std::vector<double> out;
            for (int v = 0; v < mesh.num_vertices(); ++v) out.push_back(angle_defect(mesh, v));
            return out;
        },
        py::arg("complex"));

    m.def(
        "triangulate",
        [](const CellComplex& c, double planarity_tol) {
            ToleranceProfile tol;
            tol.planarity_tol = planarity_tol;
            return triangulate_faces(c, tol).derived;
        },
        py::arg("complex"), py::arg("planarity_tol") = 1e-8);

    m.def("subdivide", [](const CellComplex& c) { return barycentric_subdivision(c).derived; });

    m.def(
        "self_intersections",
        [](const CellComplex& c, int leaf_size) {
            const TriangleSoup soup = TriangleSoup::from_refinement(triangulate_faces(c));
            const SelfIntersections r = self_intersections(soup, build_hierarchy(soup, leaf_size));
            auto as_tuples = [](const std::vector<IntersectionPair>& pairs) {
                py::list out;
                for (const auto& p : pairs) out.append(py::make_tuple(p.first, p.second, to_string(p.kind)));
                return out;
            };
            py::dict out;
            out["pairs"] = as_tuples(r.pairs);
            out["local_overlaps"] = as_tuples(r.local_overlaps);
            return out;
        },
        py::arg("complex"), py::arg("leaf_size") = 8);

    m.def(
        "check",
        [](const CellComplex& c, double planarity_tol, double defect_tol, double link_tol) {
            return parse_json(certificate_json(certify(c, tolerances(planarity_tol, defect_tol, link_tol))));
        },
        py::arg("complex"), py::arg("planarity_tol") = 1e-8, py::arg("defect_tol") = 1e-8,
        py::arg("link_tol") = 1e-9);
}
