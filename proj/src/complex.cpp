#include "flatcert/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace flatcert {

Face canonical_cycle(const Face& face)
{
    const std::size_t n = face.size();
    if (n == 0) return {};
    const auto min_it = std::min_element(face.begin(), face.end());
    const std::size_t start = static_cast<std::size_t>(min_it - face.begin());

    Face forward(n), backward(n);
    for (std::size_t i = 0; i < n; ++i) {
        forward[i] = face[(start + i) % n];
        backward[i] = face[(start + n - i) % n];
    }
    return std::min(forward, backward);
}

CellComplex CellComplex::build(std::vector<Vec3> vertices, std::vector<Face> faces)
{
    const int nv = static_cast<int>(vertices.size());
    std::set<Face> seen;

    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        const Face& face = faces[f];
        if (face.size() < 3) {
            std::ostringstream msg;
            msg << "face " << f << " has " << face.size() << " vertices, need at least 3";
            throw ComplexError(ComplexError::Kind::FaceTooSmall, f, msg.str());
        }
        for (int v : face) {
            if (v < 0 || v >= nv) {
                std::ostringstream msg;
                msg << "face " << f << " references vertex " << v << " outside [0, " << nv << ")";
                throw ComplexError(ComplexError::Kind::IndexOutOfRange, f, msg.str());
            }
        }
        Face sorted = face;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            std::ostringstream msg;
            msg << "face " << f << " repeats a vertex";
            throw ComplexError(ComplexError::Kind::RepeatedVertex, f, msg.str());
        }
        if (!seen.insert(canonical_cycle(face)).second) {
            std::ostringstream msg;
            msg << "face " << f << " duplicates an earlier face";
            throw ComplexError(ComplexError::Kind::DuplicateFace, f, msg.str());
        }
    }

    CellComplex c;
    c.vertices_ = std::move(vertices);
    c.faces_ = std::move(faces);
    return c;
}

CellComplex CellComplex::build_one_based(std::vector<Vec3> vertices, std::vector<Face> faces)
{
    for (Face& face : faces)
        for (int& v : face) --v;
    return build(std::move(vertices), std::move(faces));
}

std::map<int, int> CellComplex::degree_census() const
{
    std::map<int, int> census;
    for (const Face& face : faces_) ++census[static_cast<int>(face.size())];
    return census;
}

bool CellComplex::is_triangulated() const
{
    return std::all_of(faces_.begin(), faces_.end(),
                       [](const Face& f) { return f.size() == 3; });
}

EdgeCensus edge_census(const CellComplex& complex)
{
    EdgeCensus census;
    for (const Face& face : complex.faces()) {
        const std::size_t n = face.size();
        for (std::size_t i = 0; i < n; ++i) ++census[EdgeKey(face[i], face[(i + 1) % n])];
    }
    return census;
}

}  // namespace flatcert
