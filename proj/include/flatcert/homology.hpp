#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "flatcert/mesh.hpp"

namespace flatcert {

/// Dense row-major integer matrix. Entries of boundary operators are tiny, so
/// fixed-width storage is enough; elimination widens on demand.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    std::int64_t& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
    std::int64_t operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

    bool is_zero() const;
    IntMatrix transposed() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::int64_t> data_;
};

struct SmithForm {
    std::vector<mpz_class> invariant_factors;  // d1 | d2 | ... | dr, all positive
    int rank = 0;
};

/**
 * Invariant factors of an integer matrix under unimodular row and column
 * operations. Pivots on the smallest nonzero magnitude. Runs in int64 with
 * overflow detection and restarts in arbitrary precision if any step overflows.
 */
SmithForm smith_normal_form(const IntMatrix& m);

/// Same computation, always in arbitrary precision.
SmithForm smith_normal_form_exact(const IntMatrix& m);

/// Cellular boundary operators. d1 is edges x vertices, d2 is faces x edges;
/// the composite d2 * d1 vanishes.
struct BoundaryMatrices {
    IntMatrix d1;
    IntMatrix d2;
    std::vector<EdgeKey> edges;
    std::vector<int> edge_sign;  // +1: oriented from lower to higher vertex index
    std::vector<int> face_sign;  // +1: oriented along the listed tuple
};

BoundaryMatrices boundary_matrices(const HalfEdgeMesh& mesh);

/// Boundary operators with explicit per-edge and per-face orientation flips.
BoundaryMatrices boundary_matrices(const HalfEdgeMesh& mesh, std::vector<int> edge_sign,
                                   std::vector<int> face_sign);

struct HomologyProfile {
    std::array<int, 3> betti{0, 0, 0};
    std::array<std::vector<mpz_class>, 3> torsion;

    bool has_torsion() const;
    /// e.g. "Z + Z/2", "Z^2", "0".
    std::string group(int dim) const;

    friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

HomologyProfile homology_profile(const BoundaryMatrices& b);

/// Convenience: boundary matrices plus profile for a mesh.
HomologyProfile homology_profile(const HalfEdgeMesh& mesh);

struct SurfaceClass {
    std::optional<std::string> name;  // unset when the inputs contradict each other
    std::string diagnostic;
    bool orientable = false;
    int genus = 0;                     // handles, or cross-caps when nonorientable

    bool consistent() const noexcept { return name.has_value(); }
};

/// Classification of a closed connected surface from (orientability, chi),
/// cross-checked against the homology profile.
SurfaceClass classify_surface(const HomologyProfile& profile, int chi, bool orientable);

}  // namespace flatcert
