#pragma once

#include "nhtk/engine.hpp"
#include "nhtk/linalg.hpp"

namespace nhtk {

// hat(v) w = v x w
template <class S>
M3<S> hat(const V3<S>& v) {
    M3<S> H;
    H(0, 1) = -v.z; H(0, 2) = v.y;
    H(1, 0) = v.z;  H(1, 2) = -v.x;
    H(2, 0) = -v.y; H(2, 1) = v.x;
    return H;
}

template <class S>
V3<S> unhat(const M3<S>& H) {
    return {H(2, 1), H(0, 2), H(1, 0)};
}

// Rodrigues: exp(hat(omega) t)
template <class S>
M3<S> exp_so3(const V3<S>& omega, const S& t = S(1)) {
    S th = norm(omega) * t;
    if (value_of(th) < 1e-300) return M3<S>::identity();
    V3<S> u = normalized(omega);
    M3<S> K = hat(u);
    return M3<S>::identity() + sin(th) * K + (S(1) - cos(th)) * (K * K);
}

inline bool is_rotation(const Mat3& R, double tol = 1e-9) {
    Mat3 E = transpose(R) * R - Mat3::identity();
    double worst = 0;
    for (double e : E.m) worst = std::max(worst, std::abs(e));
    return worst < tol && std::abs(determinant(R) - 1.0) < tol;
}

// Poisson vector: third row of R, i.e. R^T k.
template <class S>
V3<S> poisson_vector(const M3<S>& R) {
    return {R(2, 0), R(2, 1), R(2, 2)};
}

// Horizontal lift of a sphere velocity: Omega_hor = gammadot x gamma.
// Rejects inputs where gammadot is not tangent at gamma.
template <class S>
V3<S> horizontal_lift_so3(const V3<S>& gamma, const V3<S>& gammadot, double tol = 1e-8) {
    double t = value_of(dot(gamma, gammadot));
    double scale = std::max(1.0, value_of(norm(gammadot)));
    if (std::abs(t) > tol * scale) throw StructuralError("horizontal_lift_so3: gammadot not tangent to sphere");
    return cross(gammadot, gamma);
}

template <class S>
M3<S> rot_z(const S& a) {
    M3<S> R = M3<S>::identity();
    R(0, 0) = cos(a); R(0, 1) = -sin(a);
    R(1, 0) = sin(a); R(1, 1) = cos(a);
    return R;
}

template <class S>
M3<S> rot_y(const S& a) {
    M3<S> R = M3<S>::identity();
    R(0, 0) = cos(a);  R(0, 2) = sin(a);
    R(2, 0) = -sin(a); R(2, 2) = cos(a);
    return R;
}

template <class S>
M3<S> rot_x(const S& a) {
    M3<S> R = M3<S>::identity();
    R(1, 1) = cos(a); R(1, 2) = -sin(a);
    R(2, 1) = sin(a); R(2, 2) = cos(a);
    return R;
}

// ZYZ Euler chart on SO(3): R(q) = Rz(q0) Ry(q1) Rz(q2). Singular at q1 = 0, pi.
template <class S>
M3<S> euler_zyz(const VecN<S>& q) {
    return rot_z(q[0]) * (rot_y(q[1]) * rot_z(q[2]));
}

// Right-invariant coframe on the Euler chart: rho^I = sum_j A_Ij dq_j with
// hat(rho(v)) = (dR v) R^{-1}; rows are the space angular velocity reads.
template <class S>
MatN<S> right_invariant_coframe(const VecN<S>& q) {
    S sph = sin(q[0]), cph = cos(q[0]), sth = sin(q[1]), cth = cos(q[1]);
    MatN<S> A(3, 3);
    A(0, 0) = S(0); A(0, 1) = -sph; A(0, 2) = sth * cph;
    A(1, 0) = S(0); A(1, 1) = cph;  A(1, 2) = sth * sph;
    A(2, 0) = S(1); A(2, 1) = S(0); A(2, 2) = cth;
    return A;
}

// Left-invariant coframe: hat(lambda(v)) = R^{-1} (dR v); rows read the body
// angular velocity.
template <class S>
MatN<S> left_invariant_coframe(const VecN<S>& q) {
    S sps = sin(q[2]), cps = cos(q[2]), sth = sin(q[1]), cth = cos(q[1]);
    MatN<S> A(3, 3);
    A(0, 0) = -sth * cps; A(0, 1) = sps; A(0, 2) = S(0);
    A(1, 0) = sth * sps;  A(1, 1) = cps; A(1, 2) = S(0);
    A(2, 0) = cth;        A(2, 1) = S(0); A(2, 2) = S(1);
    return A;
}

}  // namespace nhtk
