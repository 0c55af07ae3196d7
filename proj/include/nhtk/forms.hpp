#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "nhtk/engine.hpp"
#include "nhtk/linalg.hpp"

namespace nhtk {

// Degree-k forms on an n-dimensional chart, n <= 6. Coefficients are stored
// per strictly increasing index subset, in lexicographic tuple order, so
// antisymmetry is exact by storage.

inline constexpr int kMaxFormDim = 6;
inline constexpr int kMaxFormCoeffs = 20;  // max C(6,k)

inline int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return int(r);
}

// Subset enumeration for fixed (n, k): masks in lexicographic tuple order and
// a mask -> rank lookup.
struct SubsetTable {
    int n = 0, k = 0;
    std::vector<std::uint8_t> masks;                 // size C(n,k)
    std::array<std::int8_t, 64> rank_of_mask{};      // -1 when not a k-subset

    static const SubsetTable& get(int n, int k);
};

inline SubsetTable build_subset_table(int n, int k) {
    SubsetTable t;
    t.n = n;
    t.k = k;
    t.rank_of_mask.fill(-1);
    std::array<int, 8> idx{};
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) {
        t.masks.push_back(0);
        t.rank_of_mask[0] = 0;
        return t;
    }
    if (k > n) return t;
    while (true) {
        std::uint8_t m = 0;
        for (int i = 0; i < k; ++i) m |= std::uint8_t(1u << idx[i]);
        t.rank_of_mask[m] = std::int8_t(t.masks.size());
        t.masks.push_back(m);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return t;
}

inline const SubsetTable& SubsetTable::get(int n, int k) {
    static std::array<SubsetTable, (kMaxFormDim + 1) * (kMaxFormDim + 1)> cache = [] {
        std::array<SubsetTable, (kMaxFormDim + 1) * (kMaxFormDim + 1)> c;
        for (int n = 0; n <= kMaxFormDim; ++n)
            for (int k = 0; k <= kMaxFormDim; ++k) c[n * (kMaxFormDim + 1) + k] = build_subset_table(n, k);
        return c;
    }();
    return cache[n * (kMaxFormDim + 1) + k];
}

inline int popcount_below(std::uint8_t mask, int i) {
    return std::popcount(unsigned(mask & ((1u << i) - 1u)));
}

// Parity sign of merging two disjoint increasing tuples (a then b).
inline int merge_sign(std::uint8_t a, std::uint8_t b) {
    int inv = 0;
    for (int i = 0; i < 8; ++i)
        if (b & (1u << i)) inv += std::popcount(unsigned(a >> (i + 1)));
    return (inv & 1) ? -1 : 1;
}

template <class S>
struct Form {
    int n = 0, k = 0;
    std::array<S, kMaxFormCoeffs> c{};

    Form() = default;
    Form(int dim, int degree) : n(dim), k(degree) {
        if (dim > kMaxFormDim || degree < 0 || degree > dim) throw Error("Form: unsupported shape");
    }

    int count() const { return binom(n, k); }
    const SubsetTable& table() const { return SubsetTable::get(n, k); }

    S& operator[](int r) { return c[r]; }
    const S& operator[](int r) const { return c[r]; }

    // coefficient for an arbitrary (not necessarily sorted) index tuple
    template <class... I>
    S coeff(I... idx) const {
        std::array<int, sizeof...(I)> ids{idx...};
        std::uint8_t m = 0;
        int sign = 1;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            std::uint8_t bit = std::uint8_t(1u << ids[i]);
            if (m & bit) return S(0);
            sign *= (popcount_below(m, ids[i]) ^ (int(i))) & 1 ? -1 : 1;
            m |= bit;
        }
        int r = table().rank_of_mask[m];
        return double(sign) * c[r];
    }

    // add v * e_{i1} ^ ... ^ e_{ik} (indices need not be sorted)
    template <class... I>
    void add_term(const S& v, I... idx) {
        std::array<int, sizeof...(I)> ids{idx...};
        std::uint8_t m = 0;
        int sign = 1;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            std::uint8_t bit = std::uint8_t(1u << ids[i]);
            if (m & bit) return;  // repeated index
            sign *= (popcount_below(m, ids[i]) ^ (int(i))) & 1 ? -1 : 1;
            m |= bit;
        }
        int r = table().rank_of_mask[m];
        c[r] += double(sign) * v;
    }
};

template <class S>
Form<S> operator+(const Form<S>& f, const Form<S>& g) {
    Form<S> h(f.n, f.k);
    for (int i = 0; i < f.count(); ++i) h[i] = f[i] + g[i];
    return h;
}
template <class S>
Form<S> operator-(const Form<S>& f, const Form<S>& g) {
    Form<S> h(f.n, f.k);
    for (int i = 0; i < f.count(); ++i) h[i] = f[i] - g[i];
    return h;
}
template <class S, class T>
Form<S> operator*(const T& s, const Form<S>& f) {
    Form<S> h(f.n, f.k);
    for (int i = 0; i < f.count(); ++i) h[i] = s * f[i];
    return h;
}

template <class S>
Form<S> d_part(const Form<Dual<S>>& f) {
    Form<S> out(f.n, f.k);
    for (int i = 0; i < f.count(); ++i) out[i] = f[i].d;
    return out;
}

inline double max_abs_coeff(const Form<double>& f) {
    double m = 0;
    for (int i = 0; i < f.count(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

// Graded antisymmetric product (determinant convention, no 1/k! factors).
template <class S>
Form<S> wedge(const Form<S>& f, const Form<S>& g) {
    if (f.n != g.n) throw Error("wedge: dimension mismatch");
    Form<S> h(f.n, f.k + g.k);
    const auto& tf = f.table();
    const auto& tg = g.table();
    const auto& th = h.table();
    for (int i = 0; i < f.count(); ++i) {
        std::uint8_t mi = tf.masks[i];
        for (int j = 0; j < g.count(); ++j) {
            std::uint8_t mj = tg.masks[j];
            if (mi & mj) continue;
            int s = merge_sign(mi, mj);
            h[th.rank_of_mask[mi | mj]] += double(s) * (f[i] * g[j]);
        }
    }
    return h;
}

// Contraction in the first slot.
template <class S>
Form<S> interior_product(const VecN<S>& X, const Form<S>& f) {
    if (f.k == 0) throw Error("interior_product: degree-0 input");
    if (X.n != f.n) throw Error("interior_product: dimension mismatch");
    Form<S> h(f.n, f.k - 1);
    const auto& tf = f.table();
    const auto& th = h.table();
    for (int r = 0; r < f.count(); ++r) {
        std::uint8_t m = tf.masks[r];
        for (int i = 0; i < f.n; ++i) {
            if (!(m & (1u << i))) continue;
            int pos = popcount_below(m, i);
            double sgn = (pos & 1) ? -1.0 : 1.0;
            std::uint8_t rest = std::uint8_t(m & ~(1u << i));
            h[th.rank_of_mask[rest]] += sgn * (X[i] * f[r]);
        }
    }
    return h;
}

// Change of basis: given eta^I = sum_j A_Ij dq^j, converts coefficients taken
// w.r.t. eta into coordinate-basis coefficients (out_T = sum_S in_S det A[S,T]).
template <class S>
Form<S> convert_basis(const Form<S>& f, const MatN<S>& A) {
    Form<S> out(f.n, f.k);
    if (f.k == 0) {
        out = f;
        return out;
    }
    const auto& t = f.table();
    for (int r = 0; r < f.count(); ++r) {
        std::uint8_t ms = t.masks[r];
        std::array<int, 8> rows{};
        int k = 0;
        for (int i = 0; i < f.n; ++i)
            if (ms & (1u << i)) rows[k++] = i;
        for (int q = 0; q < out.count(); ++q) {
            std::uint8_t mt = t.masks[q];
            std::array<int, 8> cols{};
            int kk = 0;
            for (int j = 0; j < f.n; ++j)
                if (mt & (1u << j)) cols[kk++] = j;
            MatN<S> M(f.k, f.k);
            for (int i = 0; i < f.k; ++i)
                for (int j = 0; j < f.k; ++j) M(i, j) = A(rows[i], cols[j]);
            out[q] += f[r] * determinant(M);
        }
    }
    return out;
}

// Full antisymmetric coefficient matrix of a 2-form: W(i,j) = omega(b_i, b_j).
template <class S>
MatN<S> two_form_matrix(const Form<S>& f) {
    if (f.k != 2) throw Error("two_form_matrix: degree must be 2");
    MatN<S> W(f.n, f.n);
    const auto& t = f.table();
    for (int r = 0; r < f.count(); ++r) {
        std::uint8_t m = t.masks[r];
        int i = -1, j = -1;
        for (int b = 0; b < f.n; ++b)
            if (m & (1u << b)) (i < 0 ? i : j) = b;
        W(i, j) = f[r];
        W(j, i) = -f[r];
    }
    return W;
}

}  // namespace nhtk
