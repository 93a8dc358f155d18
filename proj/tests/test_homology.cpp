#include <doctest.h>

#include <chrono>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "flatcert/corpus.hpp"
#include "flatcert/homology.hpp"

using namespace flatcert;
using namespace flatcert::testing;

namespace {

IntMatrix from_rows(std::vector<std::vector<std::int64_t>> rows)
{
    IntMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    return m;
}

mpz_class det(std::vector<std::vector<mpz_class>> a)
{
    // Bareiss fraction-free elimination.
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Determinantal divisors: D_k is the gcd of all k x k minors and the k-th
// invariant factor is D_k / D_{k-1}. Exponential, for small matrices only.
std::vector<mpz_class> invariant_factors_by_minors(const IntMatrix& m)
{
    const int r = m.rows(), c = m.cols();
    std::vector<mpz_class> factors;
    mpz_class previous = 1;
    for (int k = 1; k <= std::min(r, c); ++k) {
        mpz_class g = 0;
        std::vector<int> rows(k), cols(k);
        auto next_combo = [](std::vector<int>& idx, int n) {
            int k = static_cast<int>(idx.size());
            for (int i = k - 1; i >= 0; --i)
                if (idx[i] < n - k + i) {
                    ++idx[i];
                    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    return true;
                }
            return false;
        };
        std::iota(rows.begin(), rows.end(), 0);
        do {
            std::iota(cols.begin(), cols.end(), 0);
            do {
                std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub[i][j] = m(rows[i], cols[j]);
                g = gcd(g, det(sub));
            } while (next_combo(cols, c));
        } while (next_combo(rows, r));
        if (g == 0) break;
        factors.push_back(g / previous);
        previous = g;
    }
    return factors;
}

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int range)
{
    std::uniform_int_distribution<int> d(-range, range);
    IntMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = d(rng);
    return m;
}

HomologyProfile profile_of(const CellComplex& c) { return homology_profile(*check_closed_manifold(c).mesh); }

}  // namespace

TEST_CASE("smith_normal_form small cases")
{
    SUBCASE("diag(2, 3)")
    {
        const SmithForm s = smith_normal_form(from_rows({{2, 0}, {0, 3}}));
        CHECK(s.rank == 2);
        CHECK(s.invariant_factors == std::vector<mpz_class>{1, 6});
    }
    SUBCASE("zero matrix")
    {
        const SmithForm s = smith_normal_form(IntMatrix(3, 4));
        CHECK(s.rank == 0);
        CHECK(s.invariant_factors.empty());
    }
    SUBCASE("identity")
    {
        IntMatrix id(4, 4);
        for (int i = 0; i < 4; ++i) id(i, i) = 1;
        const SmithForm s = smith_normal_form(id);
        CHECK(s.rank == 4);
        CHECK(s.invariant_factors == std::vector<mpz_class>(4, 1));
    }
    SUBCASE("empty shapes")
    {
        CHECK(smith_normal_form(IntMatrix(0, 5)).rank == 0);
        CHECK(smith_normal_form(IntMatrix(5, 0)).rank == 0);
    }
    SUBCASE("hand example")
    {
        // [[2,4,4],[-6,6,12],[10,-4,-16]] has invariant factors 2, 6, 12.
        const SmithForm s = smith_normal_form(from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
        CHECK(s.invariant_factors == std::vector<mpz_class>{2, 6, 12});
    }
}

TEST_CASE("smith_normal_form agrees with determinantal divisors")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
        const IntMatrix m = random_matrix(rng, rows, cols, trial % 2 ? 3 : 12);
        const SmithForm s = smith_normal_form(m);
        CHECK(s.invariant_factors == invariant_factors_by_minors(m));
        CHECK(s.rank == static_cast<int>(s.invariant_factors.size()));
        for (std::size_t i = 1; i < s.invariant_factors.size(); ++i)
            CHECK(s.invariant_factors[i] % s.invariant_factors[i - 1] == 0);
    }
}

TEST_CASE("smith_normal_form falls back to big integers")
{
    // Entries near 2^62 overflow any product during elimination.
    const std::int64_t big = std::int64_t(1) << 62;
    const IntMatrix m = from_rows({{big, big - 1}, {big - 1, big - 3}});
    const SmithForm fast = smith_normal_form(m);
    const SmithForm exact = smith_normal_form_exact(m);
    CHECK(fast.invariant_factors == exact.invariant_factors);
    CHECK(fast.invariant_factors == invariant_factors_by_minors(m));
}

TEST_CASE("smith_normal_form is invariant under row and column permutation and transpose")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const IntMatrix m = random_matrix(rng, 6, 5, 4);
        std::vector<int> rp(6), cp(5);
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        IntMatrix p(6, 5);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 5; ++c) p(r, c) = m(rp[r], cp[c]);
        const auto base = smith_normal_form(m).invariant_factors;
        CHECK(smith_normal_form(p).invariant_factors == base);
        CHECK(smith_normal_form(m.transposed()).invariant_factors == base);
    }
}

TEST_CASE("boundary of boundary vanishes")
{
    for (const auto& spec : default_corpus()) {
        CAPTURE(spec.name());
        const auto mesh = *check_closed_manifold(generate(spec)).mesh;
        const BoundaryMatrices b = boundary_matrices(mesh);
        CHECK(b.d1.rows() == mesh.num_edges());
        CHECK(b.d1.cols() == mesh.num_vertices());
        CHECK(b.d2.rows() == mesh.num_faces());
        CHECK(b.d2.cols() == mesh.num_edges());
        CHECK((b.d2 * b.d1).is_zero());
    }
}

TEST_CASE("homology is independent of cell orientations")
{
    std::mt19937 rng(3);
    for (const auto& spec : default_corpus()) {
        CAPTURE(spec.name());
        const auto mesh = *check_closed_manifold(generate(spec)).mesh;
        const HomologyProfile base = homology_profile(mesh);
        std::vector<int> es(mesh.num_edges()), fs(mesh.num_faces());
        for (int& s : es) s = rng() % 2 ? 1 : -1;
        for (int& s : fs) s = rng() % 2 ? 1 : -1;
        const BoundaryMatrices flipped = boundary_matrices(mesh, es, fs);
        CHECK((flipped.d2 * flipped.d1).is_zero());
        CHECK(homology_profile(flipped) == base);
    }
}

TEST_CASE("homology of the reference surfaces")
{
    const HomologyProfile sphere = profile_of(tetra());
    CHECK(sphere.betti == std::array<int, 3>{1, 0, 1});
    CHECK_FALSE(sphere.has_torsion());
    CHECK(sphere.group(1) == "0");
    CHECK(classify_surface(sphere, 2, true).name == "sphere");

    for (int m = 3; m <= 5; ++m)
        for (int n = 3; n <= 5; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            const auto start = std::chrono::steady_clock::now();
            const HomologyProfile torus = profile_of(generate({GeneratorKind::GridTorus, {m, n}}));
            const HomologyProfile klein = profile_of(generate({GeneratorKind::GridKlein, {m, n}}));
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            CHECK(seconds < 2.0);

            CHECK(torus.betti == std::array<int, 3>{1, 2, 1});
            CHECK_FALSE(torus.has_torsion());
            CHECK(torus.group(1) == "Z^2");
            CHECK(classify_surface(torus, 0, true).name == "torus");

            CHECK(klein.betti == std::array<int, 3>{1, 1, 0});
            CHECK(klein.torsion[1] == std::vector<mpz_class>{2});
            CHECK(klein.torsion[0].empty());
            CHECK(klein.torsion[2].empty());
            CHECK(klein.group(1) == "Z + Z/2");
            CHECK(klein.group(2) == "0");
            CHECK(classify_surface(klein, 0, false).name == "Klein bottle");
        }
}

TEST_CASE("homology of disconnected and relabelled complexes")
{
    CHECK(profile_of(two_tetrahedra()).betti == std::array<int, 3>{2, 0, 2});
    std::mt19937 rng(9);
    for (const auto& spec : default_corpus()) {
        const CellComplex c = generate(spec);
        CHECK(profile_of(shuffled(c, rng)) == profile_of(c));
    }
}

TEST_CASE("classify_surface")
{
    HomologyProfile p;
    p.betti = {1, 4, 1};
    const SurfaceClass g2 = classify_surface(p, -2, true);
    CHECK(g2.name == "orientable surface of genus 2");
    CHECK(g2.genus == 2);

    p.betti = {1, 0, 0};
    p.torsion[1] = {2};
    CHECK(classify_surface(p, 1, false).name == "projective plane");

    p.betti = {1, 2, 0};
    CHECK(classify_surface(p, -1, false).name == "nonorientable surface of genus 3");

    SUBCASE("contradictory inputs are reported")
    {
        HomologyProfile torus;
        torus.betti = {1, 2, 1};
        const SurfaceClass bad = classify_surface(torus, 0, false);
        CHECK_FALSE(bad.consistent());
        CHECK_FALSE(bad.diagnostic.empty());
        CHECK_FALSE(classify_surface(torus, 2, true).consistent());
    }
}
