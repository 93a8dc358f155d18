#include "flatcert/homology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace flatcert {

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](std::int64_t x) { return x == 0; });
}

IntMatrix IntMatrix::transposed() const
{
    IntMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const std::int64_t x = a(i, k);
            if (x == 0) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += x * b(k, j);
        }
    return out;
}

namespace {

struct Overflow {};

// Arithmetic policies for the elimination kernel.
struct CheckedInt64 {
    using value_type = std::int64_t;
    static value_type from(std::int64_t x) { return x; }
    static bool is_zero(value_type x) { return x == 0; }
    static value_type abs(value_type x)
    {
        if (x == INT64_MIN) throw Overflow{};
        return x < 0 ? -x : x;
    }
    static value_type quotient(value_type a, value_type b) { return a / b; }
    // a - q * b
    static value_type sub_mul(value_type a, value_type q, value_type b)
    {
        value_type prod, diff;
        if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &diff))
            throw Overflow{};
        return diff;
    }
    static mpz_class to_mpz(value_type x) { return mpz_class(static_cast<long>(x)); }
};

struct Bignum {
    using value_type = mpz_class;
    static value_type from(std::int64_t x) { return mpz_class(static_cast<long>(x)); }
    static bool is_zero(const value_type& x) { return sgn(x) == 0; }
    static value_type abs(const value_type& x) { return ::abs(x); }
    static value_type quotient(const value_type& a, const value_type& b) { return a / b; }
    static value_type sub_mul(const value_type& a, const value_type& q, const value_type& b)
    {
        return a - q * b;
    }
    static mpz_class to_mpz(const value_type& x) { return x; }
};

template <typename Policy>
std::vector<mpz_class> diagonalize(const IntMatrix& input)
{
    using T = typename Policy::value_type;
    const int rows = input.rows(), cols = input.cols();
    std::vector<std::vector<T>> a(rows, std::vector<T>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) a[r][c] = Policy::from(input(r, c));

    std::vector<mpz_class> diagonal;
    for (int t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            int pr = -1, pc = -1;
            T best{};
            for (int r = t; r < rows; ++r)
                for (int c = t; c < cols; ++c) {
                    if (Policy::is_zero(a[r][c])) continue;
                    T mag = Policy::abs(a[r][c]);
                    if (pr < 0 || mag < best) {
                        best = mag;
                        pr = r;
                        pc = c;
                    }
                }
            if (pr < 0) return diagonal;

            std::swap(a[t], a[pr]);
            if (pc != t)
                for (int r = t; r < rows; ++r) std::swap(a[r][t], a[r][pc]);

            bool cleared = true;
            const T pivot = a[t][t];
            for (int r = t + 1; r < rows; ++r) {
                if (Policy::is_zero(a[r][t])) continue;
                const T q = Policy::quotient(a[r][t], pivot);
                for (int c = t; c < cols; ++c)
                    if (!Policy::is_zero(a[t][c])) a[r][c] = Policy::sub_mul(a[r][c], q, a[t][c]);
                if (!Policy::is_zero(a[r][t])) cleared = false;
            }
            for (int c = t + 1; c < cols; ++c) {
                if (Policy::is_zero(a[t][c])) continue;
                const T q = Policy::quotient(a[t][c], pivot);
                for (int r = t; r < rows; ++r)
                    if (!Policy::is_zero(a[r][t])) a[r][c] = Policy::sub_mul(a[r][c], q, a[r][t]);
                if (!Policy::is_zero(a[t][c])) cleared = false;
            }
            if (cleared) break;
        }
        diagonal.push_back(Policy::to_mpz(Policy::abs(a[t][t])));
    }
    return diagonal;
}

SmithForm to_invariant_factors(std::vector<mpz_class> diagonal)
{
    // A diagonal matrix is equivalent to the one obtained by replacing any pair
    // (a, b) with (gcd, lcm); sweeping all pairs yields the divisibility chain.
    const std::size_t n = diagonal.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (diagonal[j] % diagonal[i] == 0) continue;
            mpz_class g = gcd(diagonal[i], diagonal[j]);
            mpz_class l = diagonal[i] / g * diagonal[j];
            diagonal[i] = g;
            diagonal[j] = l;
        }
    return {std::move(diagonal), static_cast<int>(n)};
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m)
{
    try {
        return to_invariant_factors(diagonalize<CheckedInt64>(m));
    } catch (const Overflow&) {
        return smith_normal_form_exact(m);
    }
}

SmithForm smith_normal_form_exact(const IntMatrix& m)
{
    return to_invariant_factors(diagonalize<Bignum>(m));
}

BoundaryMatrices boundary_matrices(const HalfEdgeMesh& mesh)
{
    return boundary_matrices(mesh, std::vector<int>(mesh.num_edges(), 1),
                             std::vector<int>(mesh.num_faces(), 1));
}

BoundaryMatrices boundary_matrices(const HalfEdgeMesh& mesh, std::vector<int> edge_sign,
                                   std::vector<int> face_sign)
{
    if (static_cast<int>(edge_sign.size()) != mesh.num_edges() ||
        static_cast<int>(face_sign.size()) != mesh.num_faces())
        throw std::invalid_argument("orientation vectors do not match the mesh");

    BoundaryMatrices b;
    b.edges = mesh.edges();
    b.d1 = IntMatrix(mesh.num_edges(), mesh.num_vertices());
    for (int e = 0; e < mesh.num_edges(); ++e) {
        b.d1(e, b.edges[e].a) -= edge_sign[e];
        b.d1(e, b.edges[e].b) += edge_sign[e];
    }

    b.d2 = IntMatrix(mesh.num_faces(), mesh.num_edges());
    const auto& faces = mesh.complex().faces();
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const Face& face = faces[f];
        const std::size_t n = face.size();
        for (std::size_t i = 0; i < n; ++i) {
            const int u = face[i], v = face[(i + 1) % n];
            const int e = mesh.edge_index(EdgeKey(u, v));
            const int along = (u < v) ? 1 : -1;
            b.d2(f, e) += along * edge_sign[e] * face_sign[f];
        }
    }
    b.edge_sign = std::move(edge_sign);
    b.face_sign = std::move(face_sign);
    return b;
}

bool HomologyProfile::has_torsion() const
{
    return std::any_of(torsion.begin(), torsion.end(), [](const auto& t) { return !t.empty(); });
}

std::string HomologyProfile::group(int dim) const
{
    std::vector<std::string> parts;
    const int b = betti.at(dim);
    if (b == 1) parts.push_back("Z");
    else if (b > 1) parts.push_back("Z^" + std::to_string(b));
    for (const mpz_class& t : torsion[dim]) parts.push_back("Z/" + t.get_str());
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
}

HomologyProfile homology_profile(const BoundaryMatrices& b)
{
    const SmithForm s1 = smith_normal_form(b.d1);
    const SmithForm s2 = smith_normal_form(b.d2);
    const int nv = b.d1.cols(), ne = b.d1.rows(), nf = b.d2.rows();

    HomologyProfile p;
    p.betti = {nv - s1.rank, ne - s1.rank - s2.rank, nf - s2.rank};
    for (const mpz_class& d : s1.invariant_factors)
        if (d > 1) p.torsion[0].push_back(d);
    for (const mpz_class& d : s2.invariant_factors)
        if (d > 1) p.torsion[1].push_back(d);
    return p;
}

HomologyProfile homology_profile(const HalfEdgeMesh& mesh)
{
    return homology_profile(boundary_matrices(mesh));
}

SurfaceClass classify_surface(const HomologyProfile& profile, int chi, bool orientable)
{
    SurfaceClass out;
    out.orientable = orientable;
    const auto& [b0, b1, b2] = profile.betti;
    auto fail = [&](const std::string& why) {
        out.diagnostic = why;
        return out;
    };

    if (b0 != 1) return fail("expected a connected surface, found b0 = " + std::to_string(b0));
    if (chi != b0 - b1 + b2)
        return fail("Euler characteristic " + std::to_string(chi) + " disagrees with Betti numbers");
    if (!profile.torsion[0].empty() || !profile.torsion[2].empty())
        return fail("torsion outside dimension 1");

    if (orientable) {
        if (b2 != 1) return fail("orientable closed surface must have H2 = Z");
        if (!profile.torsion[1].empty()) return fail("orientable closed surface has torsion in H1");
        if ((2 - chi) < 0 || (2 - chi) % 2 != 0) return fail("orientable surface needs even 2 - chi >= 0");
        out.genus = (2 - chi) / 2;
        if (b1 != 2 * out.genus) return fail("b1 does not match genus");
        if (out.genus == 0) out.name = "sphere";
        else if (out.genus == 1) out.name = "torus";
        else out.name = "orientable surface of genus " + std::to_string(out.genus);
    } else {
        if (b2 != 0) return fail("nonorientable closed surface must have H2 = 0");
        if (profile.torsion[1].size() != 1 || profile.torsion[1][0] != 2)
            return fail("nonorientable closed surface must have H1 torsion Z/2");
        out.genus = 2 - chi;
        if (out.genus < 1) return fail("nonorientable surface needs chi <= 1");
        if (b1 != out.genus - 1) return fail("b1 does not match cross-cap count");
        if (out.genus == 1) out.name = "projective plane";
        else if (out.genus == 2) out.name = "Klein bottle";
        else out.name = "nonorientable surface of genus " + std::to_string(out.genus);
    }
    return out;
}

}  // namespace flatcert
