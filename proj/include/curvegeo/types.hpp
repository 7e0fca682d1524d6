#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace curvegeo {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace curvegeo
