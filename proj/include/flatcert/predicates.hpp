#pragma once

#include <array>

#include "flatcert/complex.hpp"

namespace flatcert {

using Vec2 = std::array<double, 2>;

/// Sign of det[a-d; b-d; c-d] evaluated exactly on the double inputs.
/// Positive when d lies on the negative side of the plane through a, b, c
/// oriented by the right-hand rule.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Sign of det[a-c; b-c], exact. Positive for a counter-clockwise turn a, b, c.
int orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

/// Drops coordinate `axis` (x, y, z order is kept for the other two).
Vec2 drop_axis(const Vec3& p, int axis);

}  // namespace flatcert
