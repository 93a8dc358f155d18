#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "flatcert/flatness.hpp"
#include "flatcert/homology.hpp"
#include "flatcert/intersection.hpp"

namespace flatcert {

inline constexpr const char* kToolVersion = "flatcert 1.0.0";

struct InputFile {
    std::string path;
    std::string sha256;
};

/// Which pipeline stages a certificate covers.
struct Stages {
    bool topology = true;
    bool geometry = true;
    bool immersion = true;
};

/**
 * Aggregate verdict over a cell complex. Sections that were not requested or
 * could not run are empty optionals (serialized as null) with a reason.
 */
struct Certificate {
    Stages stages;
    ToleranceProfile tolerances;

    struct Input {
        std::vector<InputFile> files;
        int vertices = 0;
        int edges = 0;
        int faces = 0;
        std::map<int, int> face_degrees;
    } input;

    struct Combinatorics {
        bool closed_manifold = false;
        std::vector<ManifoldDiagnostic> diagnostics;
        int components = 0;
        std::optional<int> euler_characteristic;
        std::optional<bool> orientable;
    } combinatorics;

    struct Topology {
        HomologyProfile homology;
        SurfaceClass surface;
    };
    std::optional<Topology> topology;
    std::string topology_skipped;

    std::optional<FlatnessReport> geometry;
    std::string geometry_skipped;

    struct Immersion {
        int triangles = 0;
        std::vector<int> fallback_faces;  // source faces fanned instead of ear-clipped
        SelfIntersections intersections;
        std::optional<ImmersionClass> classification;  // needs the geometry section
    };
    std::optional<Immersion> immersion;
    std::string immersion_skipped;

    /// Claims in the order they are checked; unset when their stage did not run.
    struct Verdict {
        std::optional<bool> closed_manifold;
        std::optional<bool> connected;
        std::optional<bool> euler_characteristic_zero;
        std::optional<bool> homology_has_torsion;
        std::optional<bool> klein_bottle;
        std::optional<bool> faces_planar;
        std::optional<bool> zero_angle_defect;
        std::optional<bool> vertex_figures_embedded;
        std::optional<bool> stars_injective;
        std::optional<bool> self_intersecting;  // informational, not a pass condition
        std::string summary;
        bool all_pass = false;
    };

    /// Derived from the sections above.
    Verdict verdict() const;
};

/// Runs the requested stages. Never throws for bad geometry or topology;
/// failures land in the certificate.
Certificate certify(const CellComplex& complex, const ToleranceProfile& tol, std::vector<InputFile> files = {},
                    Stages stages = {});

/// Canonical JSON text: fixed key order, reals with 17 significant digits,
/// arrays in cell index order.
void write_certificate(const Certificate& cert, std::ostream& out);
std::string certificate_json(const Certificate& cert);

/// 0 when every evaluated claim holds, 1 otherwise.
int exit_code(const Certificate::Verdict& verdict);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace flatcert
