#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcert/complex.hpp"

namespace flatcert {

enum class MeshFormat { Off, Obj, Pair };

/// Malformed mesh input. `line()` is 1-based, 0 when not tied to a line.
class MeshIoError : public std::runtime_error {
public:
    MeshIoError(const std::string& source, int line, const std::string& what);
    int line() const noexcept { return line_; }

private:
    int line_;
};

MeshFormat parse_format(const std::string& name);
const char* to_string(MeshFormat format);

/// Format from a file extension (.off, .obj); nullopt when unknown.
std::optional<MeshFormat> format_from_extension(const std::string& path);

CellComplex read_off(std::istream& in, const std::string& source = "<off>");
CellComplex read_obj(std::istream& in, const std::string& source = "<obj>");

/// Plain-text pair: one face per line as vertex indices, one vertex per line
/// as three coordinates. Commas and brackets are treated as blanks.
CellComplex read_pair(std::istream& faces, std::istream& vertices, bool zero_based = false,
                      const std::string& source = "<pair>");

/// One path for OFF/OBJ, two (faces, vertices) for the pair format. Without an
/// explicit format, two paths mean pair and one path goes by extension.
CellComplex read_mesh(const std::vector<std::string>& paths, std::optional<MeshFormat> format = std::nullopt,
                      bool zero_based = false);

void write_off(std::ostream& out, const CellComplex& complex);
void write_obj(std::ostream& out, const CellComplex& complex);
/// Writes 1-based face tuples and coordinate triples.
void write_pair(std::ostream& faces, std::ostream& vertices, const CellComplex& complex);

/// One path for OFF/OBJ, two for the pair format.
void write_mesh(const std::vector<std::string>& paths, const CellComplex& complex,
                std::optional<MeshFormat> format = std::nullopt);

/// Round-trip text for a double: 17 significant digits.
std::string format_real(double x);

}  // namespace flatcert
