#pragma once

#include <functional>
#include <string>

#include "nhtk/exterior.hpp"
#include "nhtk/linalg.hpp"

namespace nhtk {

// A nonholonomic structure: adapted coframe on an n-chart with constraint
// rank r. Row layout: rows 0..r-1 restrict orthonormally to the constraint
// distribution, rows r..n-1 annihilate it, and the last n_derived rows
// generate the first derived ideal.
template <class Cof>
struct NHStructure {
    std::string name;
    int n = 0;
    int r = 0;
    int n_derived = 0;
    Cof coframe;
    std::function<bool(const VecN<double>&)> in_chart;  // optional domain guard

    bool chart_ok(const VecN<double>& q) const { return !in_chart || in_chart(q); }
};

template <class Cof>
NHStructure<Cof> make_structure(std::string name, int n, int r, int n_derived, Cof cof) {
    return NHStructure<Cof>{std::move(name), n, r, n_derived, std::move(cof), nullptr};
}

// --- Rolling penny -----------------------------------------------------------
// Chart (x, y, theta, phi); kinetic metric (m/2)(dx^2+dy^2) + (J/2)dtheta^2
// + (I/2)dphi^2; rolling constraints xdot = a cos(theta) phidot,
// ydot = a sin(theta) phidot.
struct PennyParams {
    double m = 2.0, a = 1.0, I = 2.0, J = 2.0;
};

struct PennyCoframe {
    PennyParams p;

    template <class S>
    MatN<S> operator()(const VecN<S>& q) const {
        S st = sin(q[2]), ct = cos(q[2]);
        MatN<S> A(4, 4);
        double k1 = std::sqrt((p.m * p.a * p.a + p.I) / 2.0);
        double k2 = std::sqrt(p.J / 2.0);
        double k3 = std::sqrt(p.m / 2.0);
        A(0, 3) = S(k1);
        A(1, 2) = S(k2);
        A(2, 0) = -k3 * st; A(2, 1) = k3 * ct;
        A(3, 0) = k3 * ct;  A(3, 1) = k3 * st; A(3, 3) = S(-k3 * p.a);
        return A;
    }
};

inline auto penny_structure(const PennyParams& p = {}) {
    return make_structure("penny", 4, 2, 1, PennyCoframe{p});
}

// The coframe printed alongside the penny's reduced structure equations
// (row 3 rescaled so the eta^1^eta^2 torsion slot is already 1).
struct PennyScaledCoframe {
    PennyParams p;

    template <class S>
    MatN<S> operator()(const VecN<S>& q) const {
        MatN<S> A = PennyCoframe{p}(q);
        double s = std::sqrt(p.J * (p.m * p.a * p.a + p.I)) / 2.0 / std::sqrt(p.m / 2.0);
        for (int j = 0; j < 4; ++j) A(2, j) = s * A(2, j);
        return A;
    }
};

// Conformally perturbed penny: kinetic energy multiplied by 1 + eps sin(x),
// so every coframe row scales by sqrt(1 + eps sin(x)).
struct PerturbedPennyCoframe {
    PennyParams p;
    double eps = 0.1;

    template <class S>
    MatN<S> operator()(const VecN<S>& q) const {
        MatN<S> A = PennyCoframe{p}(q);
        S s = sqrt(S(1) + eps * sin(q[0]));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) A(i, j) = s * A(i, j);
        return A;
    }
};

inline auto perturbed_penny_structure(const PennyParams& p = {}, double eps = 0.1) {
    return make_structure("perturbed-penny", 4, 2, 1, PerturbedPennyCoframe{p, eps});
}

// --- Engel normal form -------------------------------------------------------
// Chart (x, y, z, w); H = span{d_w, d_x + w d_y + y d_z} with the Euclidean
// metric on H. Annihilator rows: dy - w dx (not derived), dz - y dx (derived).
struct EngelNormalCoframe {
    template <class S>
    MatN<S> operator()(const VecN<S>& q) const {
        S y = q[1], w = q[3];
        S nrm = sqrt(S(1) + w * w + y * y);
        MatN<S> A(4, 4);
        A(0, 3) = S(1);                    // dw
        A(1, 0) = nrm;                     // |X2| dx
        A(2, 0) = -w; A(2, 1) = S(1);      // dy - w dx
        A(3, 0) = -y; A(3, 2) = S(1);      // dz - y dx
        return A;
    }
};

inline auto engel_normal_structure() {
    return make_structure("engel-normal-form", 4, 2, 1, EngelNormalCoframe{});
}

// Integrable test structure: H = span{d_x, d_y} in R^4.
struct IntegrableCoframe {
    template <class S>
    MatN<S> operator()(const VecN<S>& q) const {
        (void)q;
        return MatN<S>::identity(4);
    }
};

inline auto integrable_structure() {
    return make_structure("integrable", 4, 2, 2, IntegrableCoframe{});
}

}  // namespace nhtk
