#include "flatcert/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace flatcert {

namespace {

std::string strip_comment(const std::string& line)
{
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

template <typename T>
bool read_exact(std::istringstream& in, T& out)
{
    in >> out;
    return !in.fail();
}

bool at_end(std::istringstream& in)
{
    in >> std::ws;
    return in.eof();
}

// Next non-blank, non-comment line; false at end of input.
bool next_line(std::istream& in, std::string& line, int& lineno)
{
    std::string raw;
    while (std::getline(in, raw)) {
        ++lineno;
        line = strip_comment(raw);
        if (!blank(line)) return true;
    }
    return false;
}

// Index range and face size, reported against the line each face came from.
// `base` is the index of the first vertex as written in the file.
void check_faces(const std::vector<Face>& faces, const std::vector<int>& lines, std::size_t num_vertices, int base,
                 const std::string& source)
{
    const long hi = static_cast<long>(num_vertices) + base;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (faces[f].size() < 3) throw MeshIoError(source, lines[f], "a face needs at least 3 vertices");
        for (int v : faces[f])
            if (v < base || v >= hi)
                throw MeshIoError(source, lines[f],
                                  "vertex index " + std::to_string(v) + " outside [" + std::to_string(base) + ", " +
                                      std::to_string(hi) + ")");
    }
}

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw MeshIoError(path, 0, "cannot open file");
    return in;
}

}  // namespace

MeshIoError::MeshIoError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
      line_(line)
{
}

MeshFormat parse_format(const std::string& name)
{
    if (name == "off") return MeshFormat::Off;
    if (name == "obj") return MeshFormat::Obj;
    if (name == "pair") return MeshFormat::Pair;
    throw std::invalid_argument("unknown mesh format '" + name + "' (expected off, obj or pair)");
}

const char* to_string(MeshFormat format)
{
    switch (format) {
    case MeshFormat::Off: return "off";
    case MeshFormat::Obj: return "obj";
    case MeshFormat::Pair: return "pair";
    }
    return "unknown";
}

std::optional<MeshFormat> format_from_extension(const std::string& path)
{
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) return std::nullopt;
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == "off") return MeshFormat::Off;
    if (ext == "obj") return MeshFormat::Obj;
    return std::nullopt;
}

CellComplex read_off(std::istream& in, const std::string& source)
{
    std::string line;
    int lineno = 0;
    if (!next_line(in, line, lineno)) throw MeshIoError(source, lineno, "empty file");

    std::istringstream header(line);
    std::string magic;
    header >> magic;
    if (magic != "OFF") throw MeshIoError(source, lineno, "expected OFF header");
    if (at_end(header)) {
        if (!next_line(in, line, lineno)) throw MeshIoError(source, lineno, "missing element counts");
        header = std::istringstream(line);
    }
    long nv = 0, nf = 0, ne = 0;
    if (!read_exact(header, nv) || !read_exact(header, nf) || nv < 0 || nf < 0)
        throw MeshIoError(source, lineno, "malformed element counts");
    const int count_line = lineno;
    if (!at_end(header) && !read_exact(header, ne)) throw MeshIoError(source, lineno, "malformed edge count");

    std::vector<std::pair<int, std::string>> rows;
    while (next_line(in, line, lineno)) rows.emplace_back(lineno, line);
    if (static_cast<long>(rows.size()) < nv + nf)
        throw MeshIoError(source, count_line,
                          "header claims " + std::to_string(nv) + " vertices and " + std::to_string(nf) +
                              " faces but only " + std::to_string(rows.size()) + " element lines follow");
    if (static_cast<long>(rows.size()) > nv + nf)
        throw MeshIoError(source, rows[nv + nf].first, "unexpected content after the last face");

    std::vector<Vec3> vertices;
    vertices.reserve(nv);
    for (long i = 0; i < nv; ++i) {
        std::istringstream row(rows[i].second);
        Vec3 p;
        if (!read_exact(row, p.x()) || !read_exact(row, p.y()) || !read_exact(row, p.z()) || !at_end(row))
            throw MeshIoError(source, rows[i].first, "expected three vertex coordinates");
        vertices.push_back(p);
    }

    std::vector<Face> faces;
    std::vector<int> face_lines;
    faces.reserve(nf);
    for (long i = nv; i < nv + nf; ++i) {
        std::istringstream row(rows[i].second);
        long degree = 0;
        if (!read_exact(row, degree) || degree < 0)
            throw MeshIoError(source, rows[i].first, "expected a face vertex count");
        Face face(degree);
        for (long k = 0; k < degree; ++k) {
            if (!read_exact(row, face[k]))
                throw MeshIoError(source, rows[i].first, "face lists fewer indices than its count");
        }
        faces.push_back(std::move(face));
        face_lines.push_back(rows[i].first);
    }
    check_faces(faces, face_lines, vertices.size(), 0, source);
    return CellComplex::build(std::move(vertices), std::move(faces));
}

CellComplex read_obj(std::istream& in, const std::string& source)
{
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
    std::vector<int> face_lines;
    std::string line;
    int lineno = 0;
    while (next_line(in, line, lineno)) {
        std::istringstream row(line);
        std::string tag;
        row >> tag;
        if (tag == "v") {
            Vec3 p;
            if (!read_exact(row, p.x()) || !read_exact(row, p.y()) || !read_exact(row, p.z()))
                throw MeshIoError(source, lineno, "expected three vertex coordinates");
            vertices.push_back(p);
        } else if (tag == "f") {
            Face face;
            std::string token;
            while (row >> token) {
                const std::string head = token.substr(0, token.find('/'));
                long index = 0;
                try {
                    std::size_t used = 0;
                    index = std::stol(head, &used);
                    if (used != head.size()) throw std::invalid_argument(head);
                } catch (const std::exception&) {
                    throw MeshIoError(source, lineno, "malformed face index '" + token + "'");
                }
                if (index == 0) throw MeshIoError(source, lineno, "face index 0 is invalid in OBJ");
                // Negative indices count back from the latest vertex.
                face.push_back(index > 0 ? static_cast<int>(index - 1)
                                         : static_cast<int>(vertices.size() + index));
            }
            faces.push_back(std::move(face));
            face_lines.push_back(lineno);
        }
    }
    check_faces(faces, face_lines, vertices.size(), 0, source);
    return CellComplex::build(std::move(vertices), std::move(faces));
}

CellComplex read_pair(std::istream& face_in, std::istream& vertex_in, bool zero_based, const std::string& source)
{
    auto clean = [](std::string s) {
        for (char& c : s)
            if (c == ',' || c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == ';')
                c = ' ';
        return s;
    };

    std::vector<Vec3> vertices;
    std::string line;
    int lineno = 0;
    while (next_line(vertex_in, line, lineno)) {
        std::istringstream row(clean(line));
        Vec3 p;
        if (!read_exact(row, p.x()) || !read_exact(row, p.y()) || !read_exact(row, p.z()) || !at_end(row))
            throw MeshIoError(source + " (vertices)", lineno, "expected exactly three coordinates");
        vertices.push_back(p);
    }

    std::vector<Face> faces;
    std::vector<int> face_lines;
    lineno = 0;
    while (next_line(face_in, line, lineno)) {
        std::istringstream row(clean(line));
        Face face;
        long index = 0;
        while (read_exact(row, index)) face.push_back(static_cast<int>(index));
        if (!at_end(row)) throw MeshIoError(source + " (faces)", lineno, "expected integer vertex indices");
        faces.push_back(std::move(face));
        face_lines.push_back(lineno);
    }
    check_faces(faces, face_lines, vertices.size(), zero_based ? 0 : 1, source + " (faces)");
    if (zero_based) return CellComplex::build(std::move(vertices), std::move(faces));
    return CellComplex::build_one_based(std::move(vertices), std::move(faces));
}

CellComplex read_mesh(const std::vector<std::string>& paths, std::optional<MeshFormat> format, bool zero_based)
{
    if (paths.empty() || paths.size() > 2) throw std::invalid_argument("expected one mesh file or a faces/vertices pair");
    if (!format) format = paths.size() == 2 ? std::optional(MeshFormat::Pair) : format_from_extension(paths[0]);
    if (!format) throw std::invalid_argument("cannot infer the format of '" + paths[0] + "'; pass --format");

    if (*format == MeshFormat::Pair) {
        if (paths.size() != 2) throw std::invalid_argument("pair format needs a faces file and a vertices file");
        auto faces = open_input(paths[0]);
        auto verts = open_input(paths[1]);
        return read_pair(faces, verts, zero_based, paths[0]);
    }
    if (paths.size() != 1) throw std::invalid_argument("OFF and OBJ take a single file");
    auto in = open_input(paths[0]);
    return *format == MeshFormat::Off ? read_off(in, paths[0]) : read_obj(in, paths[0]);
}

std::string format_real(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_off(std::ostream& out, const CellComplex& complex)
{
    std::size_t edges = edge_census(complex).size();
    out << "OFF\n" << complex.num_vertices() << ' ' << complex.num_faces() << ' ' << edges << '\n';
    for (const Vec3& p : complex.vertices())
        out << format_real(p.x()) << ' ' << format_real(p.y()) << ' ' << format_real(p.z()) << '\n';
    for (const Face& f : complex.faces()) {
        out << f.size();
        for (int v : f) out << ' ' << v;
        out << '\n';
    }
}

void write_obj(std::ostream& out, const CellComplex& complex)
{
    for (const Vec3& p : complex.vertices())
        out << "v " << format_real(p.x()) << ' ' << format_real(p.y()) << ' ' << format_real(p.z()) << '\n';
    for (const Face& f : complex.faces()) {
        out << 'f';
        for (int v : f) out << ' ' << v + 1;
        out << '\n';
    }
}

void write_pair(std::ostream& faces, std::ostream& vertices, const CellComplex& complex)
{
    for (const Face& f : complex.faces()) {
        for (std::size_t i = 0; i < f.size(); ++i) faces << (i ? " " : "") << f[i] + 1;
        faces << '\n';
    }
    for (const Vec3& p : complex.vertices())
        vertices << format_real(p.x()) << ' ' << format_real(p.y()) << ' ' << format_real(p.z()) << '\n';
}

void write_mesh(const std::vector<std::string>& paths, const CellComplex& complex, std::optional<MeshFormat> format)
{
    if (!format) format = paths.size() == 2 ? std::optional(MeshFormat::Pair) : format_from_extension(paths.at(0));
    if (!format) throw std::invalid_argument("cannot infer output format of '" + paths.at(0) + "'; pass --format");

    auto open = [](const std::string& path) {
        std::ofstream out(path);
        if (!out) throw MeshIoError(path, 0, "cannot open for writing");
        return out;
    };
    if (*format == MeshFormat::Pair) {
        if (paths.size() != 2) throw std::invalid_argument("pair format needs a faces path and a vertices path");
        auto faces = open(paths[0]);
        auto verts = open(paths[1]);
        write_pair(faces, verts, complex);
        return;
    }
    auto out = open(paths.at(0));
    if (*format == MeshFormat::Off) write_off(out, complex);
    else write_obj(out, complex);
}

}  // namespace flatcert
