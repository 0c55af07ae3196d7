#pragma once

#include <cstdlib>
#include <string>

#include "nhtk/linalg.hpp"

namespace nhtk {

// Differentiation engine. Dual-number AD is the default; central finite
// differences are kept as an independent oracle (NH_ENGINE=fd).
struct DiffEngine {
    enum class Mode { ad, fd };
    Mode mode = Mode::ad;
    double fd_step = 1e-5;

    static DiffEngine ad() { return {Mode::ad, 1e-5}; }
    static DiffEngine fd(double h = 1e-5) {
        if (h <= 0) throw ConfigError("fd step must be positive");
        return {Mode::fd, h};
    }
    static DiffEngine from_env() {
        const char* e = std::getenv("NH_ENGINE");
        if (e && std::string(e) == "fd") return fd();
        return ad();
    }
};

template <class S> VecN<Dual<S>> lift(const VecN<S>& q) {
    VecN<Dual<S>> out(q.n);
    for (int i = 0; i < q.n; ++i) out[i] = Dual<S>(q[i]);
    return out;
}

template <class S> S d_part(const Dual<S>& x) { return x.d; }
template <class S> VecN<S> d_part(const VecN<Dual<S>>& x) {
    VecN<S> out(x.n);
    for (int i = 0; i < x.n; ++i) out[i] = x[i].d;
    return out;
}
template <class S> MatN<S> d_part(const MatN<Dual<S>>& A) {
    MatN<S> out(A.r, A.c);
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) out(i, j) = A(i, j).d;
    return out;
}
template <class S> V3<S> d_part(const V3<Dual<S>>& x) { return {x.x.d, x.y.d, x.z.d}; }

// Directional derivative of a field along coordinate direction `dir`.
// The callable must be evaluable at VecN<S> and VecN<Dual<S>>.
template <class S, class F>
auto directional_derivative(const F& f, const VecN<S>& q, int dir, const DiffEngine& eng) {
    if (eng.mode == DiffEngine::Mode::ad) {
        VecN<Dual<S>> qd = lift(q);
        qd[dir].d = S(1);
        return d_part(f(qd));
    }
    VecN<S> qp = q, qm = q;
    qp[dir] += eng.fd_step;
    qm[dir] -= eng.fd_step;
    return (1.0 / (2.0 * eng.fd_step)) * (f(qp) - f(qm));
}

template <class S, class F>
VecN<S> gradient(const F& f, const VecN<S>& q, const DiffEngine& eng) {
    VecN<S> g(q.n);
    for (int d = 0; d < q.n; ++d) {
        if (eng.mode == DiffEngine::Mode::ad) {
            VecN<Dual<S>> qd = lift(q);
            qd[d].d = S(1);
            g[d] = f(qd).d;
        } else {
            VecN<S> qp = q, qm = q;
            qp[d] += eng.fd_step;
            qm[d] -= eng.fd_step;
            g[d] = (f(qp) - f(qm)) / (2.0 * eng.fd_step);
        }
    }
    return g;
}

}  // namespace nhtk
