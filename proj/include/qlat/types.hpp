#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace qlat {

using cdouble = std::complex<double>;

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cdouble I{0.0, 1.0};

// Rates are measured in gamma0, lengths in lambda0, so k0 = 2 pi.
inline constexpr double k0 = 2.0 * pi;

}  // namespace qlat
