#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "nhtk/dual.hpp"

namespace nhtk {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
// Structural precondition failures (non-Engel input, misdeclared rows). CLI exit 4.
class StructuralError : public Error {
public:
    using Error::Error;
};
// Numerical failures (singular solves, step failures). CLI exit 3.
class NumericalError : public Error {
public:
    using Error::Error;
};
// Bad configuration. CLI exit 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

inline constexpr int kMaxDim = 8;

// Small dense vector with fixed capacity and runtime dimension.
template <class S>
struct VecN {
    int n = 0;
    std::array<S, kMaxDim> a{};

    VecN() = default;
    explicit VecN(int dim) : n(dim) {}
    VecN(std::initializer_list<S> xs) : n(int(xs.size())) {
        int i = 0;
        for (const S& x : xs) a[i++] = x;
    }
    S& operator[](int i) { return a[i]; }
    const S& operator[](int i) const { return a[i]; }
    int size() const { return n; }
};

template <class S>
struct MatN {
    int r = 0, c = 0;
    std::array<S, kMaxDim * kMaxDim> m{};

    MatN() = default;
    MatN(int rows, int cols) : r(rows), c(cols) {}
    S& operator()(int i, int j) { return m[i * kMaxDim + j]; }
    const S& operator()(int i, int j) const { return m[i * kMaxDim + j]; }

    static MatN identity(int n) {
        MatN I(n, n);
        for (int i = 0; i < n; ++i) I(i, i) = S(1);
        return I;
    }
};

template <class S> VecN<S> operator+(const VecN<S>& x, const VecN<S>& y) {
    VecN<S> z(x.n);
    for (int i = 0; i < x.n; ++i) z[i] = x[i] + y[i];
    return z;
}
template <class S> VecN<S> operator-(const VecN<S>& x, const VecN<S>& y) {
    VecN<S> z(x.n);
    for (int i = 0; i < x.n; ++i) z[i] = x[i] - y[i];
    return z;
}
template <class S, class T> auto operator*(const T& s, const VecN<S>& x) {
    VecN<decltype(s * x[0])> z(x.n);
    for (int i = 0; i < x.n; ++i) z[i] = s * x[i];
    return z;
}

template <class S> MatN<S> operator+(const MatN<S>& A, const MatN<S>& B) {
    MatN<S> C(A.r, A.c);
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) C(i, j) = A(i, j) + B(i, j);
    return C;
}
template <class S> MatN<S> operator-(const MatN<S>& A, const MatN<S>& B) {
    MatN<S> C(A.r, A.c);
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) C(i, j) = A(i, j) - B(i, j);
    return C;
}
template <class S, class T> MatN<S> operator*(const T& s, const MatN<S>& A) {
    MatN<S> C(A.r, A.c);
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) C(i, j) = s * A(i, j);
    return C;
}

template <class S>
VecN<S> operator*(const MatN<S>& A, const VecN<S>& x) {
    VecN<S> y(A.r);
    for (int i = 0; i < A.r; ++i) {
        S acc{};
        for (int j = 0; j < A.c; ++j) acc += A(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

template <class S>
MatN<S> operator*(const MatN<S>& A, const MatN<S>& B) {
    MatN<S> C(A.r, B.c);
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < B.c; ++j) {
            S acc{};
            for (int k = 0; k < A.c; ++k) acc += A(i, k) * B(k, j);
            C(i, j) = acc;
        }
    return C;
}

template <class S>
MatN<S> transpose(const MatN<S>& A) {
    MatN<S> T(A.c, A.r);
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) T(j, i) = A(i, j);
    return T;
}

template <class S>
VecN<S> column(const MatN<S>& A, int j) {
    VecN<S> x(A.r);
    for (int i = 0; i < A.r; ++i) x[i] = A(i, j);
    return x;
}

template <class S>
VecN<S> row(const MatN<S>& A, int i) {
    VecN<S> x(A.c);
    for (int j = 0; j < A.c; ++j) x[j] = A(i, j);
    return x;
}

template <class S>
S dot(const VecN<S>& x, const VecN<S>& y) {
    S acc{};
    for (int i = 0; i < x.n; ++i) acc += x[i] * y[i];
    return acc;
}

// Gaussian elimination with partial pivoting; pivots compare value parts so
// dual scalars eliminate exactly like their underlying doubles.
template <class S>
VecN<S> solve(MatN<S> A, VecN<S> b) {
    int n = A.r;
    if (A.c != n || b.n != n) throw Error("solve: shape mismatch");
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(value_of(A(k, k)));
        for (int i = k + 1; i < n; ++i) {
            double m = std::abs(value_of(A(i, k)));
            if (m > best) { best = m; piv = i; }
        }
        if (best == 0.0) throw NumericalError("solve: singular matrix");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            S f = A(i, k) / A(k, k);
            for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    VecN<S> x(n);
    for (int i = n - 1; i >= 0; --i) {
        S acc = b[i];
        for (int j = i + 1; j < n; ++j) acc -= A(i, j) * x[j];
        x[i] = acc / A(i, i);
    }
    return x;
}

template <class S>
MatN<S> inverse(const MatN<S>& A) {
    int n = A.r;
    MatN<S> inv(n, n);
    for (int j = 0; j < n; ++j) {
        VecN<S> e(n);
        e[j] = S(1);
        VecN<S> x = solve(A, e);
        for (int i = 0; i < n; ++i) inv(i, j) = x[i];
    }
    return inv;
}

template <class S>
S determinant(MatN<S> A) {
    int n = A.r;
    S det = S(1);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(value_of(A(k, k)));
        for (int i = k + 1; i < n; ++i) {
            double m = std::abs(value_of(A(i, k)));
            if (m > best) { best = m; piv = i; }
        }
        if (best == 0.0) return S(0);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            det = -det;
        }
        det *= A(k, k);
        for (int i = k + 1; i < n; ++i) {
            S f = A(i, k) / A(k, k);
            for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
        }
    }
    return det;
}

// Singular values by one-sided Jacobi, descending. Double-only; used for
// numerical rank and condition numbers.
inline std::array<double, kMaxDim> singular_values(MatN<double> A) {
    int m = A.r, n = A.c;
    // work on A^T A implicitly via column rotations
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0, aqq = 0, apq = 0;
                for (int i = 0; i < m; ++i) {
                    app += A(i, p) * A(i, p);
                    aqq += A(i, q) * A(i, q);
                    apq += A(i, p) * A(i, q);
                }
                off += apq * apq;
                if (std::abs(apq) < 1e-300) continue;
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double cth = 1.0 / std::sqrt(1.0 + t * t), sth = t * cth;
                for (int i = 0; i < m; ++i) {
                    double aip = A(i, p), aiq = A(i, q);
                    A(i, p) = cth * aip - sth * aiq;
                    A(i, q) = sth * aip + cth * aiq;
                }
            }
        }
        if (off < 1e-30) break;
    }
    std::array<double, kMaxDim> sv{};
    for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int i = 0; i < m; ++i) s += A(i, j) * A(i, j);
        sv[j] = std::sqrt(s);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sv[j] > sv[i]) std::swap(sv[i], sv[j]);
    return sv;
}

inline int numerical_rank(const MatN<double>& A, double rel_tol = 1e-8) {
    auto sv = singular_values(A);
    int n = std::min(A.r, A.c);
    double smax = sv[0];
    if (smax == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < n; ++i)
        if (sv[i] > rel_tol * smax) ++r;
    return r;
}

inline double condition_number(const MatN<double>& A) {
    auto sv = singular_values(A);
    int n = std::min(A.r, A.c);
    double smin = sv[n - 1];
    return smin > 0 ? sv[0] / smin : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Fixed-size 3-vectors and 3x3 matrices for the SO(3) / rigid-body layer.

template <class S = double>
struct V3 {
    S x{}, y{}, z{};

    V3() = default;
    V3(S x_, S y_, S z_) : x(x_), y(y_), z(z_) {}
    S& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const S& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

template <class S = double>
struct M3 {
    std::array<S, 9> m{};

    S& operator()(int i, int j) { return m[3 * i + j]; }
    const S& operator()(int i, int j) const { return m[3 * i + j]; }
    static M3 identity() {
        M3 I;
        I(0, 0) = I(1, 1) = I(2, 2) = S(1);
        return I;
    }
    static M3 diag(S a, S b, S c) {
        M3 D;
        D(0, 0) = a; D(1, 1) = b; D(2, 2) = c;
        return D;
    }
    static M3 from_rows(const V3<S>& r0, const V3<S>& r1, const V3<S>& r2) {
        M3 A;
        for (int j = 0; j < 3; ++j) { A(0, j) = r0[j]; A(1, j) = r1[j]; A(2, j) = r2[j]; }
        return A;
    }
};

template <class S> V3<S> operator+(const V3<S>& a, const V3<S>& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
template <class S> V3<S> operator-(const V3<S>& a, const V3<S>& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
template <class S> V3<S> operator-(const V3<S>& a) { return {-a.x, -a.y, -a.z}; }
template <class S, class T> auto operator*(const T& s, const V3<S>& a) {
    using R = decltype(s * a.x);
    return V3<R>{s * a.x, s * a.y, s * a.z};
}
template <class S> V3<S> operator/(const V3<S>& a, const S& s) { return {a.x / s, a.y / s, a.z / s}; }
template <class S> V3<S>& operator+=(V3<S>& a, const V3<S>& b) { a = a + b; return a; }
template <class S> V3<S>& operator-=(V3<S>& a, const V3<S>& b) { a = a - b; return a; }

template <class S> S dot(const V3<S>& a, const V3<S>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
template <class S> V3<S> cross(const V3<S>& a, const V3<S>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
template <class S> S norm2(const V3<S>& a) { return dot(a, a); }
template <class S> S norm(const V3<S>& a) { return sqrt(dot(a, a)); }
template <class S> V3<S> normalized(const V3<S>& a) { return (S(1) / norm(a)) * a; }
template <class S> S triple(const V3<S>& a, const V3<S>& b, const V3<S>& c) { return dot(a, cross(b, c)); }

template <class S> V3<S> operator*(const M3<S>& A, const V3<S>& v) {
    return {A(0, 0) * v.x + A(0, 1) * v.y + A(0, 2) * v.z,
            A(1, 0) * v.x + A(1, 1) * v.y + A(1, 2) * v.z,
            A(2, 0) * v.x + A(2, 1) * v.y + A(2, 2) * v.z};
}
template <class S> M3<S> operator*(const M3<S>& A, const M3<S>& B) {
    M3<S> C;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            S acc{};
            for (int k = 0; k < 3; ++k) acc += A(i, k) * B(k, j);
            C(i, j) = acc;
        }
    return C;
}
template <class S> M3<S> operator+(const M3<S>& A, const M3<S>& B) {
    M3<S> C;
    for (int i = 0; i < 9; ++i) C.m[i] = A.m[i] + B.m[i];
    return C;
}
template <class S> M3<S> operator-(const M3<S>& A, const M3<S>& B) {
    M3<S> C;
    for (int i = 0; i < 9; ++i) C.m[i] = A.m[i] - B.m[i];
    return C;
}
template <class S, class T> M3<S> operator*(const T& s, const M3<S>& A) {
    M3<S> C;
    for (int i = 0; i < 9; ++i) C.m[i] = s * A.m[i];
    return C;
}
template <class S> M3<S> transpose(const M3<S>& A) {
    M3<S> T;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T(i, j) = A(j, i);
    return T;
}
template <class S> S determinant(const M3<S>& A) {
    return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
           A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
           A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
}
template <class S> M3<S> inverse(const M3<S>& A) {
    S det = determinant(A);
    M3<S> inv;
    inv(0, 0) = A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
    inv(0, 1) = A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2);
    inv(0, 2) = A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1);
    inv(1, 0) = A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2);
    inv(1, 1) = A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0);
    inv(1, 2) = A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2);
    inv(2, 0) = A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0);
    inv(2, 1) = A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1);
    inv(2, 2) = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    for (int i = 0; i < 9; ++i) inv.m[i] /= det;
    return inv;
}

template <class S> V3<S> mat_row(const M3<S>& A, int i) { return {A(i, 0), A(i, 1), A(i, 2)}; }
template <class S> V3<S> mat_col(const M3<S>& A, int j) { return {A(0, j), A(1, j), A(2, j)}; }

using Vec3 = V3<double>;
using Mat3 = M3<double>;

}  // namespace nhtk
