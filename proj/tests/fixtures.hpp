#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "flatcert/complex.hpp"

namespace flatcert::testing {

inline CellComplex single_triangle()
{
    return CellComplex::build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
}

inline CellComplex tetra()
{
    return CellComplex::build({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}},
                              {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
}

/// Two tetrahedra glued at vertex 0 only.
inline CellComplex pinched_tetrahedra()
{
    return CellComplex::build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}},
                              {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2},
                               {0, 4, 5}, {0, 6, 4}, {0, 5, 6}, {4, 6, 5}});
}

/// Three triangles sharing the edge (0, 1).
inline CellComplex book_of_three()
{
    return CellComplex::build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}},
                              {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
}

/// Disjoint union of two tetrahedra.
inline CellComplex two_tetrahedra()
{
    const CellComplex t = tetra();
    std::vector<Vec3> v = t.vertices();
    for (const Vec3& p : t.vertices()) v.push_back(p + Vec3(5, 0, 0));
    std::vector<Face> f = t.faces();
    for (Face face : t.faces()) {
        for (int& i : face) i += 4;
        f.push_back(face);
    }
    return CellComplex::build(v, f);
}

/// Relabels vertices and rotates/reverses faces at random; same surface.
inline CellComplex shuffled(const CellComplex& c, std::mt19937& rng)
{
    std::vector<int> perm(c.num_vertices());
    for (int i = 0; i < c.num_vertices(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Vec3> v(c.num_vertices());
    for (int i = 0; i < c.num_vertices(); ++i) v[perm[i]] = c.vertices()[i];
    std::vector<Face> faces;
    for (Face f : c.faces()) {
        for (int& i : f) i = perm[i];
        std::rotate(f.begin(), f.begin() + rng() % f.size(), f.end());
        if (rng() % 2) std::reverse(f.begin(), f.end());
        faces.push_back(f);
    }
    std::shuffle(faces.begin(), faces.end(), rng);
    return CellComplex::build(v, faces);
}

}  // namespace flatcert::testing
