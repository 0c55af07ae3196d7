#pragma once

#include <vector>

#include "nhtk/exterior.hpp"
#include "nhtk/linalg.hpp"
#include "nhtk/nh_structure.hpp"

namespace nhtk {

// A distribution given by spanning vector fields: F(q) is n x r, columns span H.
// Bracket fields compose statically so iterated brackets stay AD-differentiable.
template <class F>
struct BracketField {
    F fields;  // (q) -> MatN, columns are vector fields
    int i = 0, j = 0;

    template <class S>
    VecN<S> operator()(const VecN<S>& q) const {
        // [X_i, X_j](q) = DX_j X_i - DX_i X_j, Jacobians via dual lift
        const MatN<S> M = fields(q);
        const int n = M.r;
        VecN<S> out(n);
        for (int l = 0; l < n; ++l) {
            VecN<Dual<S>> qd = lift(q);
            qd[l].d = S(1);
            MatN<Dual<S>> Md = fields(qd);
            for (int a = 0; a < n; ++a)
                out[a] += Md(a, j).d * M(l, i) - Md(a, i).d * M(l, j);
        }
        return out;
    }
};

struct GrowthResult {
    std::vector<int> growth;
    bool locally_constant = true;  // re-tested at perturbed points
};

namespace detail {

template <class S>
bool append_column(MatN<S>& M, const VecN<S>& v) {
    if (M.c >= kMaxDim) return false;
    for (int i = 0; i < M.r; ++i) M(i, M.c) = v[i];
    ++M.c;
    return true;
}

}  // namespace detail

// Ranks of H, H^1, H^2, ... at q (numerical rank, tolerance 1e-8 * sigma_max).
// Brackets are evaluated pairwise on the original spanning fields and their
// first- and second-level brackets; growth vectors needing deeper filtrations
// than H^3 are out of range here.
template <class F>
GrowthResult growth_vector(const F& fields, const VecN<double>& q, double rank_tol = 1e-8,
                           double probe = 1e-4) {
    auto ranks_at = [&](const VecN<double>& p) {
        std::vector<int> g;
        const MatN<double> M0 = fields(p);
        const int n = M0.r, r = M0.c;
        MatN<double> span(n, 0);
        for (int j = 0; j < r; ++j) detail::append_column(span, column(M0, j));
        g.push_back(numerical_rank(span, rank_tol));

        // level 1: brackets of the spanning fields
        std::vector<std::pair<int, int>> pairs1;
        MatN<double> span1 = span;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) {
                BracketField<F> b{fields, i, j};
                detail::append_column(span1, b(p));
                pairs1.emplace_back(i, j);
            }
        int r1 = numerical_rank(span1, rank_tol);
        g.push_back(r1);
        if (r1 == n || r1 == g.front()) return g;

        // level 2: brackets of fields with level-1 brackets
        MatN<double> span2 = span1;
        for (auto [i, j] : pairs1) {
            BracketField<F> b{fields, i, j};
            const VecN<double> bp = b(p);
            for (int a = 0; a < r; ++a) {
                // [X_a, [X_i, X_j]] via jacobians of the composed fields
                VecN<double> br(n);
                const MatN<double> M = fields(p);
                for (int l = 0; l < n; ++l) {
                    VecN<D1> qd = lift(p);
                    qd[l].d = 1.0;
                    VecN<D1> bd = b(qd);
                    MatN<D1> Md = fields(qd);
                    for (int c = 0; c < n; ++c)
                        br[c] += bd[c].d * M(l, a) - Md(c, a).d * bp[l];
                }
                if (!detail::append_column(span2, br)) break;
            }
            if (span2.c >= kMaxDim) break;
        }
        int r2 = numerical_rank(span2, rank_tol);
        g.push_back(r2);
        return g;
    };

    GrowthResult res;
    res.growth = ranks_at(q);
    for (int d = 0; d < q.n && res.locally_constant; ++d) {
        VecN<double> qp = q;
        qp[d] += probe;
        if (ranks_at(qp) != res.growth) res.locally_constant = false;
    }
    return res;
}

// Spanning fields of the constraint distribution of an NH structure: the first
// r frame columns.
template <class Cof>
struct ConstraintSpan {
    Cof cof;
    int r;

    template <class S>
    MatN<S> operator()(const VecN<S>& q) const {
        MatN<S> B = inverse(cof(q));
        MatN<S> M(B.r, r);
        for (int i = 0; i < B.r; ++i)
            for (int j = 0; j < r; ++j) M(i, j) = B(i, j);
        return M;
    }
};

template <class Cof>
GrowthResult growth_vector(const NHStructure<Cof>& s, const VecN<double>& q) {
    return growth_vector(ConstraintSpan<Cof>{s.coframe, s.r}, q);
}

// Derived-ideal membership per annihilator row: eta^nu lies in the first
// derived ideal iff d eta^nu has no eta^j ^ eta^k component over the
// constraint block, i.e. c^nu_jk = 0 for all j < k <= r.
struct DerivedIdealPartition {
    std::vector<int> horizontal;   // 0..r-1
    std::vector<int> annihilator;  // rows failing the derived test (phi)
    std::vector<int> derived;      // rows passing it (Phi)
};

template <class Cof>
DerivedIdealPartition derived_ideal_partition(const NHStructure<Cof>& s, const VecN<double>& q,
                                              const DiffEngine& eng, double tol = 1e-9) {
    auto c = structure_functions(s.coframe, q, eng);
    DerivedIdealPartition part;
    for (int i = 0; i < s.r; ++i) part.horizontal.push_back(i);
    for (int nu = s.r; nu < s.n; ++nu) {
        double worst = 0;
        for (int j = 0; j < s.r; ++j)
            for (int k = j + 1; k < s.r; ++k) worst = std::max(worst, std::abs(value_of(c(nu, j, k))));
        if (worst < tol)
            part.derived.push_back(nu);
        else
            part.annihilator.push_back(nu);
    }
    // validate against the declared adaptation: the last n_derived rows must pass
    for (int nu = s.n - s.n_derived; nu < s.n; ++nu) {
        bool ok = false;
        for (int d : part.derived) ok = ok || d == nu;
        if (!ok)
            throw StructuralError("derived_ideal: declared derived row " + std::to_string(nu + 1) +
                                  " fails the derived-ideal test");
    }
    return part;
}

}  // namespace nhtk
