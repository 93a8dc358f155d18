#include "flatcert/corpus.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace flatcert {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& msg)
{
    if (!ok) throw std::invalid_argument(msg);
}

void require_params(const GeneratorSpec& spec, std::size_t count)
{
    require(spec.params.size() == count,
            spec.name() + " takes " + std::to_string(count) + " integer parameter(s)");
}

CellComplex tetrahedron()
{
    return CellComplex::build({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}},
                              {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
}

CellComplex cube()
{
    std::vector<Vec3> v;
    for (int i = 0; i < 8; ++i) v.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
    return CellComplex::build(v, {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                                  {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}});
}

CellComplex icosahedron()
{
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                           {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    std::vector<Face> f = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
                           {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                           {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
                           {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
    return CellComplex::build(std::move(v), std::move(f));
}

CellComplex grid_torus(int m, int n)
{
    const double big = 3.0, small = 1.0;
    std::vector<Vec3> v;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            const double u = 2 * kPi * i / m, w = 2 * kPi * j / n;
            v.emplace_back((big + small * std::cos(w)) * std::cos(u), (big + small * std::cos(w)) * std::sin(u),
                           small * std::sin(w));
        }
    auto id = [&](int i, int j) { return (i % m) * n + (j % n); };
    std::vector<Face> f;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    return CellComplex::build(std::move(v), std::move(f));
}

// Figure-eight immersion. Samples sit at half-steps in the tube parameter so
// that the closing gluing (m, j) ~ (0, n - 1 - j) matches the geometry and no
// two samples land on the self-crossing.
CellComplex grid_klein(int m, int n)
{
    const double big = 4.0;
    std::vector<Vec3> v;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            const double u = 2 * kPi * i / m, w = 2 * kPi * (j + 0.5) / n;
            const double radial = big + std::cos(u / 2) * std::sin(w) - std::sin(u / 2) * std::sin(2 * w);
            v.emplace_back(radial * std::cos(u), radial * std::sin(u),
                           std::sin(u / 2) * std::sin(w) + std::cos(u / 2) * std::sin(2 * w));
        }
    auto id = [&](int i, int j) {
        if (i == m) return n - 1 - (j % n);
        return i * n + (j % n);
    };
    std::vector<Face> f;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            f.push_back({a, b, c});
            f.push_back({a, c, d});
        }
    return CellComplex::build(std::move(v), std::move(f));
}

// Unit-slope zigzag over Z_m with `folds` turning points, starting at a minimum.
std::vector<int> zigzag(int m, int folds)
{
    const int runs = folds / 2, half = m / 2;
    std::vector<int> steps;
    for (int r = 0; r < runs; ++r) {
        const int len = half / runs + (r < half % runs ? 1 : 0);
        steps.insert(steps.end(), len, +1);
        steps.insert(steps.end(), len, -1);
    }
    std::vector<int> values(m);
    for (int i = 1; i < m; ++i) values[i] = values[i - 1] + steps[i - 1];
    return values;
}

std::vector<bool> zigzag_turns(int m, int folds)
{
    const auto f = zigzag(m, folds);
    std::vector<bool> turn(m);
    for (int i = 0; i < m; ++i) {
        const int before = f[i] - f[(i + m - 1) % m];
        const int after = f[(i + 1) % m] - f[i];
        turn[i] = before != after;
    }
    return turn;
}

void validate_folded(const GeneratorSpec& spec)
{
    require_params(spec, 3);
    const int m = spec.params[0], n = spec.params[1], folds = spec.params[2];
    require(folds >= 2 && folds % 2 == 0, "folds must be an even number >= 2");
    for (int size : {m, n}) {
        require(size >= 4 && size % 2 == 0, "folded_flat_torus grid sizes must be even and >= 4");
        require(size / 2 >= folds / 2, "grid too small for the requested number of folds");
    }
}

CellComplex folded_flat_torus(int m, int n, int folds)
{
    const auto fx = zigzag(m, folds), fy = zigzag(n, folds);
    std::vector<Vec3> v;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) v.emplace_back(fx[i], fy[j], 0.0);
    auto id = [&](int i, int j) { return (i % m) * n + (j % n); };
    std::vector<Face> f;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    return CellComplex::build(std::move(v), std::move(f));
}

// Apex fan of total angle 360 * winding flattened into z = 0, closed by a
// second apex below the rim.
CellComplex doubled_cone(int degrees)
{
    const int winding = degrees / 360;
    // Odd fan size coprime to the winding keeps rim samples distinct.
    int k = std::max(5, 2 * ((degrees + 79) / 80) + 1);
    while (std::gcd(k, winding) != 1) k += 2;
    std::vector<Vec3> v = {{0, 0, 0}, {0, 0, -1}};
    for (int j = 0; j < k; ++j) {
        const double phi = 2 * kPi * winding * j / k;
        v.emplace_back(std::cos(phi), std::sin(phi), 0.0);
    }
    std::vector<Face> f;
    for (int j = 0; j < k; ++j) {
        const int a = 2 + j, b = 2 + (j + 1) % k;
        f.push_back({0, a, b});
        f.push_back({1, b, a});
    }
    return CellComplex::build(std::move(v), std::move(f));
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(const std::string& kind, const std::vector<int>& params)
{
    static const std::pair<const char*, GeneratorKind> names[] = {
        {"tetrahedron", GeneratorKind::Tetrahedron},   {"cube", GeneratorKind::Cube},
        {"icosahedron", GeneratorKind::Icosahedron},   {"grid_torus", GeneratorKind::GridTorus},
        {"grid_klein", GeneratorKind::GridKlein},      {"folded_flat_torus", GeneratorKind::FoldedFlatTorus},
        {"doubled_cone", GeneratorKind::DoubledCone},
    };
    for (const auto& [name, k] : names)
        if (kind == name) return {k, params};
    throw std::invalid_argument("unknown generator kind '" + kind + "'");
}

std::string GeneratorSpec::name() const
{
    switch (kind) {
    case GeneratorKind::Tetrahedron: return "tetrahedron";
    case GeneratorKind::Cube: return "cube";
    case GeneratorKind::Icosahedron: return "icosahedron";
    case GeneratorKind::GridTorus: return "grid_torus";
    case GeneratorKind::GridKlein: return "grid_klein";
    case GeneratorKind::FoldedFlatTorus: return "folded_flat_torus";
    case GeneratorKind::DoubledCone: return "doubled_cone";
    }
    return "unknown";
}

CellComplex generate(const GeneratorSpec& spec)
{
    switch (spec.kind) {
    case GeneratorKind::Tetrahedron: require_params(spec, 0); return tetrahedron();
    case GeneratorKind::Cube: require_params(spec, 0); return cube();
    case GeneratorKind::Icosahedron: require_params(spec, 0); return icosahedron();
    case GeneratorKind::GridTorus:
    case GeneratorKind::GridKlein: {
        require_params(spec, 2);
        const int m = spec.params[0], n = spec.params[1];
        require(m >= 3 && n >= 3, "grid sizes must be >= 3");
        return spec.kind == GeneratorKind::GridTorus ? grid_torus(m, n) : grid_klein(m, n);
    }
    case GeneratorKind::FoldedFlatTorus:
        validate_folded(spec);
        return folded_flat_torus(spec.params[0], spec.params[1], spec.params[2]);
    case GeneratorKind::DoubledCone:
        require_params(spec, 1);
        require(spec.params[0] >= 360 && spec.params[0] % 360 == 0,
                "doubled_cone angle must be a positive multiple of 360 degrees");
        return doubled_cone(spec.params[0]);
    }
    throw std::invalid_argument("unknown generator");
}

ExpectedProfile expected_profile(const GeneratorSpec& spec)
{
    switch (spec.kind) {
    case GeneratorKind::Tetrahedron:
    case GeneratorKind::Cube:
    case GeneratorKind::Icosahedron:
    case GeneratorKind::DoubledCone: return {2, true, 0, false, "sphere"};
    case GeneratorKind::GridTorus:
    case GeneratorKind::FoldedFlatTorus: return {0, true, 2, false, "torus"};
    case GeneratorKind::GridKlein: return {0, false, 1, true, "Klein bottle"};
    }
    throw std::invalid_argument("unknown generator");
}

std::vector<int> folded_torus_fold_vertices(const GeneratorSpec& spec)
{
    require(spec.kind == GeneratorKind::FoldedFlatTorus, "not a folded_flat_torus spec");
    validate_folded(spec);
    const int m = spec.params[0], n = spec.params[1], folds = spec.params[2];
    const auto tx = zigzag_turns(m, folds), ty = zigzag_turns(n, folds);
    std::vector<int> out;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (tx[i] || ty[j]) out.push_back(i * n + j);
    return out;
}

std::vector<GeneratorSpec> default_corpus()
{
    return {
        {GeneratorKind::Tetrahedron, {}},
        {GeneratorKind::Cube, {}},
        {GeneratorKind::Icosahedron, {}},
        {GeneratorKind::GridTorus, {3, 3}},
        {GeneratorKind::GridTorus, {4, 5}},
        {GeneratorKind::GridKlein, {3, 3}},
        {GeneratorKind::GridKlein, {4, 5}},
        {GeneratorKind::FoldedFlatTorus, {4, 4, 2}},
        {GeneratorKind::DoubledCone, {360}},
        {GeneratorKind::DoubledCone, {720}},
    };
}

}  // namespace flatcert
