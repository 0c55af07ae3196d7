#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nhtk/engine.hpp"
#include "nhtk/linalg.hpp"
#include "nhtk/random.hpp"
#include "nhtk/so3.hpp"
#include "nhtk/sphere.hpp"

using namespace nhtk;

TEST_CASE("hat map") {
    CHECK(hat(Vec3{0, 0, 0})(0, 1) == 0.0);

    // rotation generator about z
    Mat3 X3 = hat(Vec3{0, 0, 1});
    CHECK(X3(0, 1) == doctest::Approx(-1.0));
    CHECK(X3(1, 0) == doctest::Approx(1.0));
    CHECK(X3(0, 0) == 0.0);
    CHECK(X3(2, 2) == 0.0);

    Rng rng(7);
    for (int it = 0; it < 20; ++it) {
        Vec3 v = rng.vector(2.0), w = rng.vector(2.0);
        Vec3 hv = hat(v) * w, cv = cross(v, w);
        CHECK(norm(hv - cv) < 1e-14);
        CHECK(norm(hat(v) * v) < 1e-14);
        CHECK(norm(unhat(hat(v)) - v) < 1e-15);
        Mat3 H = hat(v), Ht = transpose(H);
        for (int i = 0; i < 9; ++i) CHECK(H.m[i] == doctest::Approx(-Ht.m[i]));
    }
}

TEST_CASE("poisson vector") {
    CHECK(norm(poisson_vector(Mat3::identity()) - Vec3{0, 0, 1}) < 1e-15);

    // Rx(pi/2) = rows((1,0,0),(0,0,-1),(0,1,0)); third row read-off.
    Mat3 R = Mat3::from_rows({1, 0, 0}, {0, 0, -1}, {0, 1, 0});
    CHECK(is_rotation(R));
    CHECK(norm(poisson_vector(R) - Vec3{0, 1, 0}) < 1e-15);

    Rng rng(3);
    for (int it = 0; it < 20; ++it) {
        Mat3 Q = exp_so3(rng.vector(3.0));
        CHECK(norm(poisson_vector(Q)) == doctest::Approx(1.0).epsilon(1e-12));
        // left S^1 action leaves gamma fixed
        double phi = rng.uniform(-3, 3);
        Mat3 SR = rot_z(phi) * Q;
        CHECK(norm(poisson_vector(SR) - poisson_vector(Q)) < 1e-14);
    }
}

TEST_CASE("horizontal lift") {
    Vec3 g{0, 0, 1}, gd{1, 0, 0};
    CHECK(norm(horizontal_lift_so3(g, gd) - Vec3{0, -1, 0}) < 1e-15);
    CHECK(norm(horizontal_lift_so3(g, Vec3{0, 0, 0})) == 0.0);

    Rng rng(11);
    for (int it = 0; it < 30; ++it) {
        Vec3 gamma = rng.unit_vector();
        Vec3 gdot = rng.tangent_at(gamma, 2.0);
        Vec3 om = horizontal_lift_so3(gamma, gdot);
        CHECK(std::abs(dot(om, gamma)) < 1e-13);
        CHECK(norm(cross(gamma, om) - gdot) < 1e-12);  // round trip
    }
    CHECK_THROWS_AS(horizontal_lift_so3(g, Vec3{0, 0, 0.5}), StructuralError);
}

TEST_CASE("so3 exponential stays orthogonal") {
    Rng rng(5);
    for (int it = 0; it < 20; ++it) {
        Vec3 om = rng.unit_vector();
        double t = rng.uniform(0.0, 10.0);
        Mat3 R = exp_so3(om, t);
        CHECK(is_rotation(R, 1e-10));
    }
}

TEST_CASE("euler chart reproduces rotations and coframes read velocities") {
    Rng rng(13);
    for (int it = 0; it < 20; ++it) {
        VecN<double> q{rng.uniform(-3, 3), rng.uniform(0.2, 2.9), rng.uniform(-3, 3)};
        Mat3 R = euler_zyz(q);
        CHECK(is_rotation(R, 1e-12));

        // compare coframe reads against a finite-difference dR
        VecN<double> qdot{rng.normal(), rng.normal(), rng.normal()};
        double h = 1e-6;
        VecN<double> qp = q, qm = q;
        for (int i = 0; i < 3; ++i) { qp[i] += h * qdot[i]; qm[i] -= h * qdot[i]; }
        Mat3 dR = (1.0 / (2 * h)) * (euler_zyz(qp) - euler_zyz(qm));
        Vec3 omega_space = unhat(dR * transpose(R));
        Vec3 omega_body = unhat(transpose(R) * dR);

        VecN<double> rho = right_invariant_coframe(q) * qdot;
        VecN<double> lam = left_invariant_coframe(q) * qdot;
        for (int i = 0; i < 3; ++i) {
            CHECK(rho[i] == doctest::Approx(omega_space[i]).epsilon(1e-6));
            CHECK(lam[i] == doctest::Approx(omega_body[i]).epsilon(1e-6));
        }
    }
}

TEST_CASE("directional derivative: AD exact, FD second order") {
    auto f = [](const auto& q) { return q[0] * q[0]; };
    VecN<double> p{2.0, 0.0};
    CHECK(directional_derivative(f, p, 0, DiffEngine::ad()) == doctest::Approx(4.0));
    CHECK(directional_derivative(f, p, 1, DiffEngine::ad()) == 0.0);

    auto c = [](const auto& q) { return q[0] * 0.0 + 3.5; };
    CHECK(directional_derivative(c, p, 0, DiffEngine::ad()) == 0.0);
    CHECK(std::abs(directional_derivative(c, p, 0, DiffEngine::fd())) < 1e-10);

    // AD vs FD cross-oracle on random smooth fields
    Rng rng(17);
    for (int it = 0; it < 25; ++it) {
        double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1), cc = rng.uniform(-1, 1);
        auto g = [=](const auto& q) {
            return sin(a * q[0]) * cos(b * q[1]) + cc * q[0] * q[1] * q[1];
        };
        VecN<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        int dir = it % 2;
        DiffEngine fd = DiffEngine::fd(1e-5);
        double dad = directional_derivative(g, x, dir, DiffEngine::ad());
        double dfd = directional_derivative(g, x, dir, fd);
        CHECK(std::abs(dad - dfd) < 10 * fd.fd_step * fd.fd_step);
    }
}

TEST_CASE("nested duals differentiate twice") {
    // d^2/dx^2 of sin(x) at x0 via Dual<Dual<double>>
    double x0 = 0.7;
    Dual<D1> x(D1(x0, 1.0), D1(1.0, 0.0));
    auto y = sin(x);
    CHECK(y.v.v == doctest::Approx(std::sin(x0)));
    CHECK(y.v.d == doctest::Approx(std::cos(x0)));
    CHECK(y.d.v == doctest::Approx(std::cos(x0)));
    CHECK(y.d.d == doctest::Approx(-std::sin(x0)));
}

TEST_CASE("small linear algebra") {
    Rng rng(23);
    for (int it = 0; it < 10; ++it) {
        int n = 2 + it % 5;
        MatN<double> A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
        A = A + 3.0 * MatN<double>::identity(n);
        MatN<double> Ainv = inverse(A);
        MatN<double> P = A * Ainv;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(P(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
        CHECK(determinant(A) * determinant(Ainv) == doctest::Approx(1.0).epsilon(1e-9));
    }

    MatN<double> B(3, 3);
    B(0, 0) = 1; B(1, 1) = 2;  // rank 2
    CHECK(numerical_rank(B) == 2);
    B(2, 2) = 1e-14;
    CHECK(numerical_rank(B) == 2);
    B(2, 2) = 0.5;
    CHECK(numerical_rank(B) == 3);
}

TEST_CASE("sphere chart frame is orthonormal and oriented") {
    Rng rng(29);
    for (int it = 0; it < 20; ++it) {
        double th = rng.uniform(0.1, 3.0), ph = rng.uniform(-3, 3);
        Vec3 g = sphere_gamma(th, ph), e1 = sphere_e1(th, ph), e2 = sphere_e2(th, ph);
        CHECK(norm(g) == doctest::Approx(1.0));
        CHECK(std::abs(dot(e1, e2)) < 1e-14);
        CHECK(std::abs(dot(e1, g)) < 1e-14);
        CHECK(norm(cross(e1, e2) - g) < 1e-14);
    }
}
