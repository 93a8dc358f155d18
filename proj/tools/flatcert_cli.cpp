// Command line front end: certificate pipeline, refinement and the test corpus.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatcert/certificate.hpp"
#include "flatcert/corpus.hpp"
#include "flatcert/mesh_io.hpp"
#include "flatcert/refine.hpp"

namespace {

using namespace flatcert;

struct Options {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::string format;
    std::string out_format;
    std::string report;
    bool zero_based = false;
    bool quiet = false;
    ToleranceProfile tol;
    std::string kind;
    std::vector<int> params;
};

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("mesh", o.inputs, "mesh file, or faces file then vertices file")->required()->expected(1, 2);
    cmd->add_option("--format", o.format, "input format: off, obj or pair")
        ->check(CLI::IsMember({"off", "obj", "pair"}));
    cmd->add_flag("--zero-based", o.zero_based, "pair format uses 0-based indices");
    cmd->add_flag("--quiet", o.quiet, "suppress standard output");
}

void add_tolerances(CLI::App* cmd, Options& o)
{
    cmd->add_option("--planarity-tol", o.tol.planarity_tol, "max face deviation / face diameter")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--defect-tol", o.tol.defect_tol, "max |angle defect| in radians")->check(CLI::PositiveNumber);
    cmd->add_option("--link-tol", o.tol.link_tol, "vertex link separation in radians")->check(CLI::PositiveNumber);
    cmd->add_option("--report", o.report, "write the certificate to this path");
}

void add_output(CLI::App* cmd, Options& o)
{
    cmd->add_option("-o,--output", o.outputs, "output mesh (two paths for the pair format)")
        ->required()
        ->expected(1, 2);
    cmd->add_option("--out-format", o.out_format, "output format: off, obj or pair")
        ->check(CLI::IsMember({"off", "obj", "pair"}));
}

std::optional<MeshFormat> optional_format(const std::string& s)
{
    if (s.empty()) return std::nullopt;
    return parse_format(s);
}

CellComplex load(const Options& o)
{
    return read_mesh(o.inputs, optional_format(o.format), o.zero_based);
}

std::vector<InputFile> identify(const Options& o)
{
    std::vector<InputFile> files;
    for (const auto& path : o.inputs) files.push_back({path, sha256_file(path)});
    return files;
}

void save_report(const Options& o, const Certificate& cert)
{
    if (o.report.empty()) return;
    std::ofstream out(o.report, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report '" + o.report + "'");
    write_certificate(cert, out);
}

void print_topology(const Certificate& c)
{
    const auto& comb = c.combinatorics;
    std::cout << "V=" << c.input.vertices << " E=" << c.input.edges << " F=" << c.input.faces << "\n";
    std::cout << "closed manifold: " << (comb.closed_manifold ? "yes" : "no") << "\n";
    for (const auto& d : comb.diagnostics) std::cout << "  " << d.describe() << "\n";
    std::cout << "components: " << comb.components << "\n";
    if (comb.euler_characteristic) std::cout << "euler characteristic: " << *comb.euler_characteristic << "\n";
    if (comb.orientable) std::cout << "orientable: " << (*comb.orientable ? "yes" : "no") << "\n";
    if (c.topology) {
        for (int k = 0; k < 3; ++k) std::cout << "H" << k << " = " << c.topology->homology.group(k) << "\n";
        const auto& s = c.topology->surface;
        std::cout << "surface: " << (s.name ? *s.name : "inconsistent (" + s.diagnostic + ")") << "\n";
    }
}

void print_geometry(const Certificate& c)
{
    if (!c.geometry) {
        std::cout << "geometry skipped: " << c.geometry_skipped << "\n";
        return;
    }
    const auto& g = *c.geometry;
    std::cout << "max relative planarity deviation: " << format_real(g.max_relative_deviation()) << "\n";
    std::cout << "max |angle defect|: " << format_real(g.max_abs_defect()) << "\n";
    std::cout << "vertex links not embedded: " << g.link_failures() << "\n";
    std::cout << "total defect: " << format_real(g.gauss_bonnet.total_defect)
              << " (2*pi*chi = " << format_real(g.gauss_bonnet.reference) << ")\n";
}

void print_immersion(const Certificate& c)
{
    if (!c.immersion) {
        std::cout << "intersections skipped: " << c.immersion_skipped << "\n";
        return;
    }
    const auto& im = *c.immersion;
    std::cout << "triangles: " << im.triangles << "\n";
    std::cout << "self-intersecting triangle pairs: " << im.intersections.pairs.size() << "\n";
    std::cout << "local overlaps: " << im.intersections.local_overlaps.size() << "\n";
    if (im.classification) std::cout << "classification: " << to_string(*im.classification) << "\n";
}

int run_stage(const Options& o, Stages stages)
{
    const Certificate cert = certify(load(o), o.tol, identify(o), stages);
    save_report(o, cert);
    const auto verdict = cert.verdict();
    if (!o.quiet) {
        if (stages.topology) print_topology(cert);
        if (stages.geometry) print_geometry(cert);
        if (stages.immersion) print_immersion(cert);
        std::cout << "verdict: " << verdict.summary << (verdict.all_pass ? " [pass]" : " [fail]") << "\n";
    }
    return exit_code(verdict);
}

int run_check(const Options& o)
{
    const Certificate cert = certify(load(o), o.tol, identify(o));
    save_report(o, cert);
    const auto verdict = cert.verdict();
    if (!o.quiet) {
        if (o.report.empty()) write_certificate(cert, std::cout);
        else std::cout << "verdict: " << verdict.summary << (verdict.all_pass ? " [pass]" : " [fail]") << "\n";
    }
    return exit_code(verdict);
}

int run_refine(const Options& o, bool subdivide)
{
    const CellComplex input = load(o);
    CellComplex out = triangulate_faces(input, o.tol).derived;
    if (subdivide) out = barycentric_subdivision(out).derived;
    write_mesh(o.outputs, out, optional_format(o.out_format));
    if (!o.quiet)
        std::cout << "wrote " << out.num_vertices() << " vertices, " << out.num_faces() << " triangles\n";
    return 0;
}

int run_generate(const Options& o)
{
    const GeneratorSpec spec = GeneratorSpec::parse(o.kind, o.params);
    const CellComplex mesh = generate(spec);
    write_mesh(o.outputs, mesh, optional_format(o.out_format));
    if (!o.quiet)
        std::cout << "wrote " << spec.name() << ": " << mesh.num_vertices() << " vertices, " << mesh.num_faces()
                  << " faces\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certify polyhedral surfaces: manifoldness, topology, flatness and immersion"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "full pipeline, writes a certificate");
    add_common(check, o);
    add_tolerances(check, o);

    auto* topology = app.add_subcommand("topology", "manifold check, homology and surface type");
    add_common(topology, o);
    add_tolerances(topology, o);

    auto* flatness = app.add_subcommand("flatness", "planarity, angle defects and vertex links");
    add_common(flatness, o);
    add_tolerances(flatness, o);

    auto* intersections = app.add_subcommand("intersections", "self-intersections of the triangulated surface");
    add_common(intersections, o);
    add_tolerances(intersections, o);

    auto* triangulate = app.add_subcommand("triangulate", "ear-clip polygonal faces");
    add_common(triangulate, o);
    add_output(triangulate, o);
    triangulate->add_option("--planarity-tol", o.tol.planarity_tol)->check(CLI::PositiveNumber);

    auto* subdivide = app.add_subcommand("subdivide", "triangulate, then barycentric subdivision");
    add_common(subdivide, o);
    add_output(subdivide, o);
    subdivide->add_option("--planarity-tol", o.tol.planarity_tol)->check(CLI::PositiveNumber);

    auto* gen = app.add_subcommand("generate", "write a corpus surface");
    gen->add_option("kind", o.kind,
                    "tetrahedron | cube | icosahedron | grid_torus M N | grid_klein M N | "
                    "folded_flat_torus M N FOLDS | doubled_cone DEGREES")
        ->required();
    gen->add_option("params", o.params, "integer parameters");
    gen->add_flag("--quiet", o.quiet, "suppress standard output");
    add_output(gen, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        if (*check) return run_check(o);
        if (*topology) return run_stage(o, {true, false, false});
        if (*flatness) return run_stage(o, {false, true, false});
        if (*intersections) return run_stage(o, {false, false, true});
        if (*triangulate) return run_refine(o, false);
        if (*subdivide) return run_refine(o, true);
        if (*gen) return run_generate(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
