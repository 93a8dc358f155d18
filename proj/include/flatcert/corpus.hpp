#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "flatcert/complex.hpp"

namespace flatcert {

enum class GeneratorKind {
    Tetrahedron,
    Cube,
    Icosahedron,
    GridTorus,        // (m, n): quad grid on a torus of revolution
    GridKlein,        // (m, n): triangulated grid with one reversed gluing
    FoldedFlatTorus,  // (m, n, folds): grid torus folded into the plane by zigzags
    DoubledCone,      // (total apex angle in degrees, a multiple of 360)
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Tetrahedron;
    std::vector<int> params;

    /// Parses "grid_klein" plus its integer parameters. Throws std::invalid_argument.
    static GeneratorSpec parse(const std::string& kind, const std::vector<int>& params);
    std::string name() const;
};

/// Analytically known topology of a generated surface.
struct ExpectedProfile {
    int chi = 0;
    bool orientable = true;
    int b1 = 0;
    bool z2_torsion = false;
    std::string surface;
};

/// Throws std::invalid_argument for out-of-range parameters.
CellComplex generate(const GeneratorSpec& spec);
ExpectedProfile expected_profile(const GeneratorSpec& spec);

/// Vertices of folded_flat_torus that lie on a fold line.
std::vector<int> folded_torus_fold_vertices(const GeneratorSpec& spec);

/// Every generator kind with small default parameters.
std::vector<GeneratorSpec> default_corpus();

}  // namespace flatcert
