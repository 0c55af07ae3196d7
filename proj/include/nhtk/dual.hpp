#pragma once

#include <cmath>
#include <ostream>
#include <type_traits>

namespace nhtk {

// First-order dual number over an arbitrary scalar T. Nesting Dual<Dual<...>>
// yields higher mixed derivatives; the Cartan pipeline nests four levels deep.
template <class T>
struct Dual {
    T v{};  // value
    T d{};  // derivative

    Dual() = default;
    Dual(T value) : v(value) {}
    Dual(T value, T deriv) : v(value), d(deriv) {}
    template <class U>
        requires(std::is_arithmetic_v<U> && !std::is_same_v<T, double>)
    Dual(U value) : v(double(value)) {}
};

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) { return value_of(x.v); }

template <class T> Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator+(const Dual<T>& a) { return a; }

template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}

template <class T> Dual<T> operator+(const Dual<T>& a, double b) { return {a.v + b, a.d}; }
template <class T> Dual<T> operator+(double a, const Dual<T>& b) { return {a + b.v, b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, double b) { return {a.v - b, a.d}; }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.v, -b.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T> Dual<T> operator*(double a, const Dual<T>& b) { return {b.v * a, b.d * a}; }
template <class T> Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) {
    T q = a / b.v;
    return {q, -q * b.d / b.v};
}

template <class T> Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { a = a + b; return a; }
template <class T> Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) { a = a - b; return a; }
template <class T> Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) { a = a * b; return a; }
template <class T> Dual<T>& operator/=(Dual<T>& a, const Dual<T>& b) { a = a / b; return a; }
template <class T> Dual<T>& operator+=(Dual<T>& a, double b) { a = a + b; return a; }
template <class T> Dual<T>& operator-=(Dual<T>& a, double b) { a = a - b; return a; }
template <class T> Dual<T>& operator*=(Dual<T>& a, double b) { a = a * b; return a; }
template <class T> Dual<T>& operator/=(Dual<T>& a, double b) { a = a / b; return a; }

// Comparisons act on value parts; derivative information does not order.
template <class T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return value_of(a) < value_of(b); }
template <class T> bool operator>(const Dual<T>& a, const Dual<T>& b) { return value_of(a) > value_of(b); }
template <class T> bool operator<(const Dual<T>& a, double b) { return value_of(a) < b; }
template <class T> bool operator>(const Dual<T>& a, double b) { return value_of(a) > b; }

using std::abs;
using std::atan2;
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

template <class T> Dual<T> sin(const Dual<T>& x) { return {sin(x.v), x.d * cos(x.v)}; }
template <class T> Dual<T> cos(const Dual<T>& x) { return {cos(x.v), -x.d * sin(x.v)}; }
template <class T> Dual<T> tan(const Dual<T>& x) {
    T c = cos(x.v);
    return {tan(x.v), x.d / (c * c)};
}
template <class T> Dual<T> sqrt(const Dual<T>& x) {
    T s = sqrt(x.v);
    return {s, x.d / (2.0 * s)};
}
template <class T> Dual<T> exp(const Dual<T>& x) {
    T e = exp(x.v);
    return {e, x.d * e};
}
template <class T> Dual<T> log(const Dual<T>& x) { return {log(x.v), x.d / x.v}; }
template <class T> Dual<T> pow(const Dual<T>& x, double p) {
    return {pow(x.v, p), p * pow(x.v, p - 1.0) * x.d};
}
template <class T> Dual<T> abs(const Dual<T>& x) {
    return value_of(x) < 0.0 ? -x : x;
}
template <class T> Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
    T den = x.v * x.v + y.v * y.v;
    return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / den};
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Dual<T>& x) {
    return os << "(" << x.v << " + eps*" << x.d << ")";
}

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

}  // namespace nhtk
