#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nhtk/distribution.hpp"
#include "nhtk/exterior.hpp"
#include "nhtk/nh_structure.hpp"
#include "nhtk/random.hpp"

namespace nhtk {

// Pointwise normalization of an adapted Engel coframe to its canonical
// e-structure representative. Three stages, each re-reading the structure
// functions of the previous stage (nested dual numbers carry the chain rule):
//   1. scale row 3 so the eta^1^eta^2 slot of d eta^3 equals 1,
//   2. rotate rows 1-2 in O(2) and scale row 4 so the (13,23) slots of
//      d eta^4 become (0,1),
//   3. add multiples of row 4 to rows 1-3 to kill the 23 slots of rows 1-3.
// Tie-break: rotation angle in [0,pi), stage-1 scale keeps the sign of the
// incoming slot; the residual Z2 x Z2 acts by the documented sign pattern.

inline constexpr double kEngelTol = 1e-9;

template <class Cof>
struct EngelStage1 {
    Cof inner;
    DiffEngine eng;

    template <class S>
    MatN<S> operator()(const VecN<S>& q) const {
        MatN<S> A = inner(q);
        auto c = structure_functions(inner, q, eng);
        const S& c312 = c(2, 0, 1);
        if (abs(value_of(c312)) < kEngelTol)
            throw StructuralError("engel: eta^1^eta^2 slot of d eta^3 vanishes (annihilator rows misdeclared?)");
        S a33 = S(1) / c312;
        for (int j = 0; j < 4; ++j) A(2, j) = a33 * A(2, j);
        return A;
    }
};

template <class Cof>
struct EngelStage2 {
    Cof inner;
    DiffEngine eng;

    template <class S>
    MatN<S> operator()(const VecN<S>& q) const {
        MatN<S> A = inner(q);
        auto c = structure_functions(inner, q, eng);
        S u = c(3, 0, 2), v = c(3, 1, 2);  // c^4_13, c^4_23
        S rho = sqrt(u * u + v * v);
        if (value_of(rho) < kEngelTol)
            throw StructuralError("engel: (c^4_13, c^4_23) = 0; distribution is not Engel here");
        S alpha = atan2(u, v);
        S a44 = S(1) / rho;
        if (value_of(alpha) < 0.0) {
            alpha += 3.14159265358979323846;
            a44 = -a44;
        }
        S ca = cos(alpha), sa = sin(alpha);
        MatN<S> out = A;
        for (int j = 0; j < 4; ++j) {
            out(0, j) = ca * A(0, j) - sa * A(1, j);
            out(1, j) = sa * A(0, j) + ca * A(1, j);
            out(3, j) = a44 * A(3, j);
        }
        return out;
    }
};

template <class Cof>
struct EngelStage3 {
    Cof inner;
    DiffEngine eng;

    template <class S>
    MatN<S> operator()(const VecN<S>& q) const {
        MatN<S> A = inner(q);
        auto c = structure_functions(inner, q, eng);
        // with c^4_23 = 1 the 23 slots shift additively under row-4 shears
        S b14 = -c(0, 1, 2), b24 = -c(1, 1, 2), a34 = -c(2, 1, 2);
        MatN<S> out = A;
        for (int j = 0; j < 4; ++j) {
            out(0, j) = A(0, j) + b14 * A(3, j);
            out(1, j) = A(1, j) + b24 * A(3, j);
            out(2, j) = A(2, j) + a34 * A(3, j);
        }
        return out;
    }
};

template <class Cof>
using BfinalCoframe = EngelStage3<EngelStage2<EngelStage1<Cof>>>;

template <class Cof>
BfinalCoframe<Cof> bfinal_coframe(const Cof& cof, const DiffEngine& eng) {
    return {{{cof, eng}, eng}, eng};
}

// Torsion table of the canonical coframing: T^I_JK with d eta^I =
// sum_{J<K} T^I_JK eta^J ^ eta^K, 24 entries (4 rows x 6 ordered pairs).
struct TorsionTable {
    double t[4][4][4] = {};

    double operator()(int i, int j, int k) const { return t[i][j][k]; }
    double& at(int i, int j, int k) { return t[i][j][k]; }

    static const std::array<std::pair<int, int>, 6>& pairs() {
        static const std::array<std::pair<int, int>, 6> p{
            {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
        return p;
    }
};

struct BfinalResult {
    TorsionTable table;
    double normalization_residual = 0;  // worst violation of the pinned slots
    double t414_relation_residual = 0;  // |T^4_14 - (T^2_12 + T^3_13)|
};

namespace detail {

inline void check_engel_preconditions(const GrowthResult& g) {
    if (g.growth != std::vector<int>{2, 3, 4})
        throw StructuralError("engel: growth vector is not (2,3,4)");
}

}  // namespace detail

template <class Cof>
BfinalResult bfinal_normalize(const NHStructure<Cof>& s, const VecN<double>& q,
                              const DiffEngine& eng) {
    if (s.n != 4 || s.r != 2) throw StructuralError("engel: structure is not rank 2 on a 4-chart");
    detail::check_engel_preconditions(growth_vector(s, q));
    derived_ideal_partition(s, q, eng);

    auto nf = bfinal_coframe(s.coframe, eng);
    auto c = structure_functions(nf, q, eng);

    BfinalResult res;
    for (int i = 0; i < 4; ++i)
        for (auto [j, k] : TorsionTable::pairs()) {
            res.table.at(i, j, k) = c(i, j, k);
            res.table.at(i, k, j) = c(i, k, j);
        }

    auto dev = [&](double got, double want) {
        res.normalization_residual = std::max(res.normalization_residual, std::abs(got - want));
    };
    dev(res.table(2, 0, 1), 1.0);  // T^3_12 = 1
    dev(res.table(3, 1, 2), 1.0);  // T^4_23 = 1
    dev(res.table(3, 0, 1), 0.0);  // T^4_12 = 0
    dev(res.table(3, 0, 2), 0.0);  // T^4_13 = 0
    dev(res.table(0, 1, 2), 0.0);  // T^1_23 = 0
    dev(res.table(1, 1, 2), 0.0);  // T^2_23 = 0
    dev(res.table(2, 1, 2), 0.0);  // T^3_23 = 0
    if (res.normalization_residual > 1e-6)
        throw NumericalError("engel: normalization failed to pin the canonical slots");

    res.t414_relation_residual =
        std::abs(res.table(3, 0, 3) - (res.table(1, 0, 1) + res.table(2, 0, 2)));
    return res;
}

// Constancy sweep over sampled points: the e-structure is integrable (the
// symmetry group has the maximal dimension four) iff every torsion entry is
// constant over the chart.
struct ConstancyReport {
    std::vector<VecN<double>> points;
    std::vector<TorsionTable> tables;
    double max_spread = 0;
    double spread[4][4][4] = {};
    double max_t414_residual = 0;
    bool maximal_symmetry = false;
    std::string verdict;
};

template <class Cof, class Sampler>
ConstancyReport symmetry_constancy_report(const NHStructure<Cof>& s, Sampler sample_point,
                                          int n_points, const DiffEngine& eng,
                                          double tol = 1e-6) {
    ConstancyReport rep;
    for (int i = 0; i < n_points; ++i) {
        VecN<double> q = sample_point(i);
        BfinalResult r = bfinal_normalize(s, q, eng);
        rep.points.push_back(q);
        rep.tables.push_back(r.table);
        rep.max_t414_residual = std::max(rep.max_t414_residual, r.t414_relation_residual);
    }
    for (int i = 0; i < 4; ++i)
        for (auto [j, k] : TorsionTable::pairs()) {
            double lo = rep.tables[0](i, j, k), hi = lo;
            for (const auto& t : rep.tables) {
                lo = std::min(lo, t(i, j, k));
                hi = std::max(hi, t(i, j, k));
            }
            rep.spread[i][j][k] = hi - lo;
            rep.max_spread = std::max(rep.max_spread, hi - lo);
        }
    rep.maximal_symmetry = rep.max_spread < tol;
    rep.verdict = rep.maximal_symmetry ? "integrable e-structure (dim-4 symmetry)"
                                       : "non-maximal: torsion varies over the chart";
    return rep;
}

// Canonical line field: L = span(X_1) is characterized by [L, H^1] in H^1,
// i.e. eta^4([X_3, X_1]) = 0. The test is run by direct bracket evaluation on
// the normalized frame; the same test with X_2 must fail.
struct LineFieldCheck {
    double x1_residual = 0;  // |eta^4([X_3, X_1])|, should vanish
    double x2_residual = 0;  // |eta^4([X_3, X_2])|, should not
    bool x1_passes = false;
    bool x2_fails = false;
};

template <class Cof>
LineFieldCheck canonical_line_field_check(const NHStructure<Cof>& s, const VecN<double>& q,
                                          const DiffEngine& eng, double tol = 1e-7) {
    if (s.n != 4 || s.r != 2) throw StructuralError("engel: structure is not rank 2 on a 4-chart");
    detail::check_engel_preconditions(growth_vector(s, q));

    auto nf = bfinal_coframe(s.coframe, eng);
    auto frame_cols = [&nf](const auto& x) { return inverse(nf(x)); };

    MatN<double> A = nf(q);
    MatN<double> B = frame_cols(q);
    std::array<MatN<double>, kMaxDim> dB;
    for (int l = 0; l < 4; ++l) dB[l] = directional_derivative(frame_cols, q, l, eng);

    auto eta4_bracket = [&](int J, int K) {
        VecN<double> br(4);
        for (int i = 0; i < 4; ++i)
            for (int l = 0; l < 4; ++l) br[i] += dB[l](i, K) * B(l, J) - dB[l](i, J) * B(l, K);
        double acc = 0;
        for (int l = 0; l < 4; ++l) acc += A(3, l) * br[l];
        return acc;
    };

    LineFieldCheck chk;
    chk.x1_residual = std::abs(eta4_bracket(2, 0));
    chk.x2_residual = std::abs(eta4_bracket(2, 1));
    chk.x1_passes = chk.x1_residual < tol;
    chk.x2_fails = chk.x2_residual > 10 * tol;
    return chk;
}

// Natural metric g_nat = sum eta~^I (x) eta~^I of the normalized coframe,
// as a matrix in chart coordinates: A^T A.
template <class Cof>
MatN<double> natural_metric(const NHStructure<Cof>& s, const VecN<double>& q,
                            const DiffEngine& eng) {
    auto nf = bfinal_coframe(s.coframe, eng);
    MatN<double> A = nf(q);
    return transpose(A) * A;
}

}  // namespace nhtk
