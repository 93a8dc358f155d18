#include "flatcert/predicates.hpp"

#include <cmath>
#include <limits>

#include <gmpxx.h>

namespace flatcert {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2;  // unit roundoff
constexpr double kOrient3dBound = (7.0 + 56.0 * kEps) * kEps;
constexpr double kOrient2dBound = (3.0 + 16.0 * kEps) * kEps;

template <typename T>
int sign_of(const T& x)
{
    return (x > 0) - (x < 0);
}

int orient3d_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d)
{
    mpq_class m[3][3];
    const Vec3* rows[3] = {&a, &b, &c};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = mpq_class((*rows[i])[j]) - mpq_class(d[j]);
    const mpq_class det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                          m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                          m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return sgn(det);
}

int orient2d_exact(const Vec2& a, const Vec2& b, const Vec2& c)
{
    const mpq_class ax = mpq_class(a[0]) - mpq_class(c[0]), ay = mpq_class(a[1]) - mpq_class(c[1]);
    const mpq_class bx = mpq_class(b[0]) - mpq_class(c[0]), by = mpq_class(b[1]) - mpq_class(c[1]);
    return sgn(mpq_class(ax * by - ay * bx));
}

}  // namespace

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d)
{
    const double adx = a.x() - d.x(), ady = a.y() - d.y(), adz = a.z() - d.z();
    const double bdx = b.x() - d.x(), bdy = b.y() - d.y(), bdz = b.z() - d.z();
    const double cdx = c.x() - d.x(), cdy = c.y() - d.y(), cdz = c.z() - d.z();

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;

    const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                             (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                             (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
    const double bound = kOrient3dBound * permanent;
    if (det > bound || -det > bound) return sign_of(det);
    return orient3d_exact(a, b, c, d);
}

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c)
{
    const double left = (a[0] - c[0]) * (b[1] - c[1]);
    const double right = (a[1] - c[1]) * (b[0] - c[0]);
    const double det = left - right;
    const double bound = kOrient2dBound * (std::abs(left) + std::abs(right));
    if (det > bound || -det > bound) return sign_of(det);
    return orient2d_exact(a, b, c);
}

Vec2 drop_axis(const Vec3& p, int axis)
{
    switch (axis) {
    case 0: return {p.y(), p.z()};
    case 1: return {p.x(), p.z()};
    default: return {p.x(), p.y()};
    }
}

}  // namespace flatcert
