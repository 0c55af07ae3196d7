#pragma once

#include "nhtk/engine.hpp"
#include "nhtk/forms.hpp"
#include "nhtk/linalg.hpp"

namespace nhtk {

// Conventions used throughout:
//   coframe matrix A(q):  eta^I = sum_j A_Ij dq^j   (row I = components of eta^I)
//   frame matrix    B(q) = A^{-1}                   (column J = components of e_J)
//   d eta^I = sum_{J<K} c^I_JK eta^J ^ eta^K  with  c^I_JK = -eta^I([e_J, e_K])

template <class S>
struct StructureCoeffs {
    int n = 0;
    std::array<S, kMaxFormDim * kMaxFormDim * kMaxFormDim> v{};

    explicit StructureCoeffs(int dim = 0) : n(dim) {}
    S& operator()(int i, int j, int k) { return v[(i * kMaxFormDim + j) * kMaxFormDim + k]; }
    const S& operator()(int i, int j, int k) const { return v[(i * kMaxFormDim + j) * kMaxFormDim + k]; }
};

// Lie brackets of the frame columns via Jacobians: [e_J,e_K] = De_K e_J - De_J e_K.
template <class S, class Cof>
StructureCoeffs<S> structure_functions(const Cof& cof, const VecN<S>& q, const DiffEngine& eng) {
    const MatN<S> A = cof(q);
    const int n = A.r;
    const MatN<S> B = inverse(A);

    auto frame = [&cof](const auto& x) { return inverse(cof(x)); };
    std::array<MatN<S>, kMaxFormDim + 2> dB;
    for (int l = 0; l < n; ++l) dB[l] = directional_derivative(frame, q, l, eng);

    StructureCoeffs<S> c(n);
    for (int J = 0; J < n; ++J) {
        for (int K = J + 1; K < n; ++K) {
            VecN<S> br(n);
            for (int i = 0; i < n; ++i) {
                S acc{};
                for (int l = 0; l < n; ++l) acc += dB[l](i, K) * B(l, J) - dB[l](i, J) * B(l, K);
                br[i] = acc;
            }
            VecN<S> comps = A * br;
            for (int I = 0; I < n; ++I) {
                c(I, J, K) = -comps[I];
                c(I, K, J) = comps[I];
            }
        }
    }
    return c;
}

// Levi-Civita connection of the constant metric sum eta^I (x) eta^I, expressed
// through the structure functions:
//   omega_IJ(e_K) = (c^I_JK - c^J_IK - c^K_IJ) / 2
// Skew in (I,J) exactly; torsion-free (d eta = -omega ^ eta) by construction.
template <class S>
StructureCoeffs<S> levi_civita_from_structure(const StructureCoeffs<S>& c) {
    StructureCoeffs<S> g(c.n);
    for (int I = 0; I < c.n; ++I)
        for (int J = 0; J < c.n; ++J)
            for (int K = 0; K < c.n; ++K)
                g(I, J, K) = 0.5 * (c(I, J, K) - c(J, I, K) - c(K, I, J));
    return g;
}

template <class S, class Cof>
StructureCoeffs<S> levi_civita_connection(const Cof& cof, const VecN<S>& q, const DiffEngine& eng) {
    return levi_civita_from_structure(structure_functions(cof, q, eng));
}

// Exterior derivative of a coefficient field in the coordinate basis.
// coefFn: VecN<S'> -> Form<S'> of fixed degree.
template <class S, class F>
Form<S> exterior_derivative(const F& coefFn, const VecN<S>& q, const DiffEngine& eng) {
    Form<S> f = coefFn(q);
    Form<S> out(f.n, f.k + 1);
    const auto& t = f.table();
    for (int l = 0; l < f.n; ++l) {
        Form<S> df = directional_derivative(coefFn, q, l, eng);
        for (int r = 0; r < f.count(); ++r) {
            std::uint8_t m = t.masks[r];
            if (m & (1u << l)) continue;
            int pos = popcount_below(m, l);
            double sgn = (pos & 1) ? -1.0 : 1.0;
            out[out.table().rank_of_mask[std::uint8_t(m | (1u << l))]] += sgn * df[r];
        }
    }
    return out;
}

// Exterior derivative of a field given in an anholonomic basis eta:
//   d(f_S eta^S) = e_K(f_S) eta^K ^ eta^S + f_S d(eta^S),
// with d eta^I supplied by the structure functions of the basis coframe.
template <class S, class F, class Cof>
Form<S> exterior_derivative_anholonomic(const F& coefFn, const Cof& cof, const VecN<S>& q,
                                        const DiffEngine& eng) {
    Form<S> f = coefFn(q);
    const int n = f.n;
    Form<S> out(n, f.k + 1);
    const MatN<S> B = inverse(cof(q));
    const StructureCoeffs<S> c = structure_functions(cof, q, eng);

    // frame-directional derivatives of the coefficients
    std::array<Form<S>, kMaxFormDim + 2> dcoef;
    for (int l = 0; l < n; ++l) dcoef[l] = directional_derivative(coefFn, q, l, eng);

    const auto& t = f.table();
    for (int r = 0; r < f.count(); ++r) {
        std::uint8_t m = t.masks[r];
        for (int K = 0; K < n; ++K) {
            if (m & (1u << K)) continue;
            S eK{};  // e_K(f_r)
            for (int l = 0; l < n; ++l) eK += B(l, K) * dcoef[l][r];
            int pos = popcount_below(m, K);
            double sgn = (pos & 1) ? -1.0 : 1.0;
            out[out.table().rank_of_mask[std::uint8_t(m | (1u << K))]] += sgn * eK;
        }
        // f_r * d(eta^S): replace each factor eta^{s_t} by d eta^{s_t}
        if (f.k == 0) continue;
        std::array<int, 8> ids{};
        int k = 0;
        for (int i = 0; i < n; ++i)
            if (m & (1u << i)) ids[k++] = i;
        for (int tpos = 0; tpos < f.k; ++tpos) {
            std::uint8_t rest = std::uint8_t(m & ~(1u << ids[tpos]));
            double outer = (tpos & 1) ? -1.0 : 1.0;
            for (int J = 0; J < n; ++J) {
                for (int K = J + 1; K < n; ++K) {
                    const S& cc = c(ids[tpos], J, K);
                    if (value_of(abs(cc)) == 0.0) continue;
                    if ((rest & (1u << J)) || (rest & (1u << K))) continue;
                    // term: outer * f_r * c * eta^J ^ eta^K ^ eta^rest
                    std::uint8_t mj = std::uint8_t((1u << J) | (1u << K));
                    int s = merge_sign(mj, rest);
                    out[out.table().rank_of_mask[std::uint8_t(mj | rest)]] +=
                        outer * double(s) * (f[r] * cc);
                }
            }
        }
    }
    return out;
}

// Canonical two-form on T*Q in coframe coordinates (print-faithful orientation):
//   Omega = dm_I ^ eta^I + m_I d eta^I,
// on the 2n chart basis (eta^1..eta^n, dm_1..dm_n). The eta-eta block is
// E_JK = m_I c^I_JK = -m_I eta^I([e_J,e_K]).
template <class S, class Cof>
Form<S> anholonomic_canonical_two_form(const Cof& cof, const VecN<S>& m, const VecN<S>& q,
                                       const DiffEngine& eng) {
    const int n = m.n;
    if (2 * n > kMaxFormDim) throw Error("anholonomic_canonical_two_form: dimension too large");
    StructureCoeffs<S> c = structure_functions(cof, q, eng);
    Form<S> w(2 * n, 2);
    for (int I = 0; I < n; ++I) w.add_term(S(1), n + I, I);  // dm_I ^ eta^I
    for (int J = 0; J < n; ++J)
        for (int K = J + 1; K < n; ++K) {
            S e{};
            for (int I = 0; I < n; ++I) e += m[I] * c(I, J, K);
            w.add_term(e, J, K);
        }
    return w;
}

}  // namespace nhtk
