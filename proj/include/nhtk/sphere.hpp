#pragma once

#include "nhtk/linalg.hpp"

namespace nhtk {

// Spherical chart: gamma = (sin t cos p, sin t sin p, cos t) with the
// orthonormal frame e1 = d_theta, e2 = (1/sin t) d_phi and coframe
// theta1 = dt, theta2 = sin t dp. Polar caps excluded from sampling grids.
inline constexpr double kPolarCap = 0.05;

template <class S>
V3<S> sphere_gamma(const S& theta, const S& phi) {
    return {sin(theta) * cos(phi), sin(theta) * sin(phi), cos(theta)};
}

template <class S>
V3<S> sphere_e1(const S& theta, const S& phi) {
    return {cos(theta) * cos(phi), cos(theta) * sin(phi), -sin(theta)};
}

template <class S>
V3<S> sphere_e2(const S& /*theta*/, const S& phi) {
    return {-sin(phi), cos(phi), S(0)};
}

inline bool sphere_chart_ok(double theta) {
    return theta > kPolarCap && theta < 3.14159265358979323846 - kPolarCap;
}

}  // namespace nhtk
