#include "flatcert/certificate.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include <openssl/evp.h>

#include <json.hpp>

#include "flatcert/mesh_io.hpp"

namespace flatcert {

using Json = nlohmann::ordered_json;

namespace {

Json optional_bool(const std::optional<bool>& b)
{
    return b ? Json(*b) : Json(nullptr);
}

Json real(double x)
{
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

Json pair_list(const std::vector<IntersectionPair>& pairs)
{
    Json out = Json::array();
    for (const auto& p : pairs) out.push_back({p.first + 1, p.second + 1, to_string(p.kind)});
    return out;
}

bool is_scalar(const Json& j)
{
    return !j.is_object() && !j.is_array();
}

void emit(const Json& j, std::ostream& out, int indent, bool compact)
{
    switch (j.type()) {
    case Json::value_t::null: out << "null"; return;
    case Json::value_t::boolean: out << (j.get<bool>() ? "true" : "false"); return;
    case Json::value_t::number_integer: out << j.get<long long>(); return;
    case Json::value_t::number_unsigned: out << j.get<unsigned long long>(); return;
    case Json::value_t::number_float: {
        const double x = j.get<double>();
        if (std::isfinite(x)) out << format_real(x);
        else out << "null";
        return;
    }
    case Json::value_t::string: out << Json(j).dump(); return;
    default: break;
    }

    const bool object = j.is_object();
    const char open = object ? '{' : '[', close = object ? '}' : ']';
    if (j.empty()) {
        out << open << close;
        return;
    }
    bool inline_all = compact;
    if (!object && !compact) {
        inline_all = true;
        for (const auto& e : j)
            if (!is_scalar(e)) inline_all = false;
    }
    const std::string pad(std::size_t(indent + 2), ' ');
    out << open;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << (inline_all ? ", " : ",");
        first = false;
        if (!inline_all) out << '\n' << pad;
        if (object) out << Json(it.key()).dump() << ": ";
        // Containers inside arrays stay on one line.
        emit(*it, out, indent + 2, inline_all || !object);
    }
    if (!inline_all) out << '\n' << std::string(std::size_t(indent), ' ');
    out << close;
}

Json to_json(const Certificate& c)
{
    Json root;
    root["tool"] = kToolVersion;

    Json files = Json::array();
    for (const auto& f : c.input.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}});
    Json degrees = Json::object();
    for (const auto& [deg, count] : c.input.face_degrees) degrees[std::to_string(deg)] = count;
    root["input"] = {{"files", files},
                     {"vertices", c.input.vertices},
                     {"edges", c.input.edges},
                     {"faces", c.input.faces},
                     {"face_degrees", degrees}};

    root["tolerances"] = {{"planarity_tol", c.tolerances.planarity_tol},
                          {"defect_tol", c.tolerances.defect_tol},
                          {"link_tol", c.tolerances.link_tol}};

    Json diags = Json::array();
    for (const auto& d : c.combinatorics.diagnostics) {
        Json item = {{"kind", to_string(d.kind)}};
        if (d.vertex >= 0) item["vertex"] = d.vertex + 1;
        else item["edge"] = {d.edge.a + 1, d.edge.b + 1};
        item["count"] = d.count;
        diags.push_back(item);
    }
    const auto& comb = c.combinatorics;
    root["combinatorics"] = {
        {"closed_manifold", comb.closed_manifold},
        {"diagnostics", diags},
        {"components", comb.components},
        {"euler_characteristic", comb.euler_characteristic ? Json(*comb.euler_characteristic) : Json(nullptr)},
        {"orientable", optional_bool(comb.orientable)},
    };

    if (c.topology) {
        const auto& h = c.topology->homology;
        Json torsion = Json::array(), groups = Json::array();
        for (int k = 0; k < 3; ++k) {
            Json t = Json::array();
            for (const auto& d : h.torsion[k]) t.push_back(d.get_str());
            torsion.push_back(t);
            groups.push_back(h.group(k));
        }
        const auto& s = c.topology->surface;
        root["topology"] = {{"status", "ok"},
                            {"betti", {h.betti[0], h.betti[1], h.betti[2]}},
                            {"torsion", torsion},
                            {"groups", groups},
                            {"surface", s.name ? Json(*s.name) : Json(nullptr)},
                            {"diagnostic", s.diagnostic}};
    } else {
        root["topology"] = {{"status", c.stages.topology ? "skipped" : "not requested"},
                            {"reason", c.topology_skipped}};
    }

    if (c.geometry) {
        const FlatnessReport& g = *c.geometry;
        Json faces = Json::array(), vertices = Json::array();
        for (const auto& f : g.faces) {
            Json item = {{"relative_deviation", real(f.relative_deviation)},
                         {"planar", f.planar},
                         {"simple", f.simple}};
            if (!f.error.empty()) item["error"] = f.error;
            faces.push_back(item);
        }
        for (std::size_t v = 0; v < g.vertex_defects.size(); ++v) {
            const auto& l = g.links[v];
            Json item = {{"defect", real(g.vertex_defects[v])}, {"link_embedded", l.embedded}};
            if (!l.embedded) {
                item["witness"] = to_string(l.witness);
                // Positions along the vertex link, 1-based like every other index.
                item["arcs"] = {l.arc_a >= 0 ? Json(l.arc_a + 1) : Json(nullptr),
                                l.arc_b >= 0 ? Json(l.arc_b + 1) : Json(nullptr)};
            }
            vertices.push_back(item);
        }
        root["geometry"] = {
            {"status", "ok"},
            {"max_relative_planarity_deviation", real(g.max_relative_deviation())},
            {"max_abs_angle_defect", real(g.max_abs_defect())},
            {"link_failures", g.link_failures()},
            {"gauss_bonnet",
             {{"total_defect", real(g.gauss_bonnet.total_defect)},
              {"reference", real(g.gauss_bonnet.reference)},
              {"residual", real(g.gauss_bonnet.residual)}}},
            {"faces", faces},
            {"vertices", vertices},
        };
    } else {
        root["geometry"] = {{"status", c.stages.geometry ? "skipped" : "not requested"},
                            {"reason", c.geometry_skipped}};
    }

    if (c.immersion) {
        const auto& im = *c.immersion;
        int by_kind[3] = {0, 0, 0};
        for (const auto& p : im.intersections.pairs) ++by_kind[static_cast<int>(p.kind)];
        Json fallback = Json::array();
        for (int f : im.fallback_faces) fallback.push_back(f + 1);
        root["immersion"] = {
            {"status", "ok"},
            {"triangles", im.triangles},
            {"fallback_faces", fallback},
            {"self_intersection_pairs", im.intersections.pairs.size()},
            {"by_kind", {{"crossing", by_kind[0]}, {"touching", by_kind[1]}, {"coplanar", by_kind[2]}}},
            {"local_overlaps", im.intersections.local_overlaps.size()},
            {"classification", im.classification ? Json(to_string(*im.classification)) : Json(nullptr)},
            {"pairs", pair_list(im.intersections.pairs)},
            {"local_overlap_pairs", pair_list(im.intersections.local_overlaps)},
        };
    } else {
        root["immersion"] = {{"status", c.stages.immersion ? "skipped" : "not requested"},
                             {"reason", c.immersion_skipped}};
    }

    const auto v = c.verdict();
    root["verdict"] = {
        {"closed_manifold", optional_bool(v.closed_manifold)},
        {"connected", optional_bool(v.connected)},
        {"euler_characteristic_zero", optional_bool(v.euler_characteristic_zero)},
        {"homology_has_torsion", optional_bool(v.homology_has_torsion)},
        {"klein_bottle", optional_bool(v.klein_bottle)},
        {"faces_planar", optional_bool(v.faces_planar)},
        {"zero_angle_defect", optional_bool(v.zero_angle_defect)},
        {"vertex_figures_embedded", optional_bool(v.vertex_figures_embedded)},
        {"stars_injective", optional_bool(v.stars_injective)},
        {"self_intersecting", optional_bool(v.self_intersecting)},
        {"summary", v.summary},
        {"all_pass", v.all_pass},
    };
    return root;
}

}  // namespace

Certificate certify(const CellComplex& complex, const ToleranceProfile& tol, std::vector<InputFile> files,
                    Stages stages)
{
    tol.validate();
    Certificate c;
    c.stages = stages;
    c.tolerances = tol;
    c.input.files = std::move(files);
    c.input.vertices = complex.num_vertices();
    c.input.faces = complex.num_faces();
    c.input.edges = static_cast<int>(edge_census(complex).size());
    c.input.face_degrees = complex.degree_census();

    ManifoldCheck check = check_closed_manifold(complex);
    c.combinatorics.closed_manifold = check.ok();
    c.combinatorics.diagnostics = check.diagnostics;
    const HalfEdgeMesh mesh = check.ok() ? *check.mesh : HalfEdgeMesh::build(complex);
    c.combinatorics.components = connected_components(mesh).count;
    if (check.ok()) {
        c.combinatorics.euler_characteristic = euler_characteristic(mesh);
        c.combinatorics.orientable = orientability(mesh).orientable;
    }

    if (stages.topology) {
        if (check.ok()) {
            Certificate::Topology t;
            t.homology = homology_profile(mesh);
            t.surface = classify_surface(t.homology, *c.combinatorics.euler_characteristic,
                                         *c.combinatorics.orientable);
            c.topology = std::move(t);
        } else {
            c.topology_skipped = "not a closed manifold";
        }
    }

    if (stages.geometry) {
        if (check.ok()) c.geometry = flatness_report(mesh, tol);
        else c.geometry_skipped = "not a closed manifold";
    }

    if (stages.immersion) {
        try {
            const Refinement tri = triangulate_faces(complex, tol);
            const TriangleSoup soup = TriangleSoup::from_refinement(tri);
            Certificate::Immersion im;
            im.triangles = static_cast<int>(soup.triangles.size());
            for (int f = 0; f < complex.num_faces(); ++f)
                if (tri.fallback[f]) im.fallback_faces.push_back(f);
            if (!soup.triangles.empty()) im.intersections = self_intersections(soup, build_hierarchy(soup));
            if (c.geometry)
                im.classification = classify_immersion(c.geometry->all_links_embedded(), im.intersections.pairs);
            c.immersion = std::move(im);
        } catch (const std::exception& e) {
            c.immersion_skipped = e.what();
        }
    }
    return c;
}

Certificate::Verdict Certificate::verdict() const
{
    Verdict v;
    v.closed_manifold = combinatorics.closed_manifold;
    v.connected = combinatorics.components == 1;
    if (topology && combinatorics.euler_characteristic)
        v.euler_characteristic_zero = *combinatorics.euler_characteristic == 0;
    if (topology) {
        v.homology_has_torsion = topology->homology.has_torsion();
        v.klein_bottle = topology->surface.name == std::optional<std::string>("Klein bottle");
    }
    if (geometry) {
        v.faces_planar = geometry->all_planar();
        v.zero_angle_defect = geometry->all_flat();
        v.vertex_figures_embedded = geometry->all_links_embedded();
    }
    if (immersion) {
        v.stars_injective = immersion->intersections.local_overlaps.empty();
        v.self_intersecting = !immersion->intersections.pairs.empty();
    }

    if (!combinatorics.closed_manifold) {
        v.summary = "not a closed manifold";
    } else {
        std::vector<std::string> words;
        if (immersion && immersion->classification) words.push_back(to_string(*immersion->classification));
        else if (geometry && !*v.vertex_figures_embedded) words.push_back("locally non-injective");
        if (geometry) words.push_back(*v.faces_planar && *v.zero_angle_defect ? "flat" : "non-flat");
        if (topology) words.push_back(topology->surface.name.value_or("unclassified surface"));
        else words.push_back("closed surface");
        for (std::size_t i = 0; i < words.size(); ++i) v.summary += (i ? " " : "") + words[i];
    }

    const bool stages_ran = (!stages.topology || topology) && (!stages.geometry || geometry) &&
                            (!stages.immersion || immersion);
    bool all = stages_ran;
    for (const auto& claim : {v.closed_manifold, v.connected, v.euler_characteristic_zero, v.homology_has_torsion,
                              v.klein_bottle, v.faces_planar, v.zero_angle_defect, v.vertex_figures_embedded,
                              v.stars_injective})
        if (claim && !*claim) all = false;
    v.all_pass = all;
    return v;
}

void write_certificate(const Certificate& cert, std::ostream& out)
{
    emit(to_json(cert), out, 0, false);
    out << '\n';
}

std::string certificate_json(const Certificate& cert)
{
    std::ostringstream out;
    write_certificate(cert, out);
    return out.str();
}

int exit_code(const Certificate::Verdict& verdict)
{
    return verdict.all_pass ? 0 : 1;
}

std::string sha256_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MeshIoError(path, 0, "cannot open file");
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < length; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

}  // namespace flatcert
