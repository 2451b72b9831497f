// dual.hpp - nested first-order dual numbers for exact forward-mode derivatives.
//
// Dual<T> carries one directional derivative; nesting (Dual<Dual<double>>, ...)
// yields exact higher/mixed partials.  Depth 4 is the deepest the engine ever
// needs: the brute-force covariant derivative of the lifted curvature
// differentiates the bundle metric three times, and the bundle metric itself
// contains base Christoffel symbols, i.e. one more derivative of the base
// metric.  Every arithmetic op and math function below is the standard chain
// rule; no truncation error is introduced at any depth.
#pragma once

#include <cmath>
#include <type_traits>

namespace tbgeo {

template <class T>
struct Dual {
  T val{};  // value part
  T der{};  // derivative part (coefficient of the nilpotent unit)

  constexpr Dual() = default;
  constexpr Dual(const T& v) : val(v) {}  // implicit: constants promote with zero derivative
  constexpr Dual(const T& v, const T& d) : val(v), der(d) {}

  // Promote a plain double through however many nesting levels T has.
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  constexpr Dual(double v) : val(v) {}

  Dual& operator+=(const Dual& o) { val += o.val; der += o.der; return *this; }
  Dual& operator-=(const Dual& o) { val -= o.val; der -= o.der; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.val + b.val, a.der + b.der}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.val - b.val, a.der - b.der}; }
  friend Dual operator-(const Dual& a) { return {-a.val, -a.der}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.val * b.val, a.der * b.val + a.val * b.der};
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T q = a.val / b.val;
    return {q, (a.der - q * b.der) / b.val};
  }

  friend Dual operator+(const Dual& a, double b) { return a + Dual(b); }
  friend Dual operator+(double a, const Dual& b) { return Dual(a) + b; }
  friend Dual operator-(const Dual& a, double b) { return a - Dual(b); }
  friend Dual operator-(double a, const Dual& b) { return Dual(a) - b; }
  friend Dual operator*(const Dual& a, double b) { return a * Dual(b); }
  friend Dual operator*(double a, const Dual& b) { return Dual(a) * b; }
  friend Dual operator/(const Dual& a, double b) { return a / Dual(b); }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

// ---- scalar introspection ---------------------------------------------------

inline double real_part(double x) { return x; }
template <class T>
double real_part(const Dual<T>& x) { return real_part(x.val); }

template <class T>
struct dual_depth : std::integral_constant<int, 0> {};
template <class T>
struct dual_depth<Dual<T>> : std::integral_constant<int, dual_depth<T>::value + 1> {};
template <class T>
inline constexpr int dual_depth_v = dual_depth<T>::value;

inline bool all_finite(double x) { return std::isfinite(x); }
template <class T>
bool all_finite(const Dual<T>& x) { return all_finite(x.val) && all_finite(x.der); }

// ---- math functions (chain rule) --------------------------------------------
// Unqualified calls inside generic code resolve here for duals and to std::
// for doubles via `using std::sin;` etc. at the call site.

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::sin; using std::cos;
  return {sin(x.val), x.der * cos(x.val)};
}

template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::sin; using std::cos;
  return {cos(x.val), -x.der * sin(x.val)};
}

template <class T>
Dual<T> tan(const Dual<T>& x) {
  using std::tan; using std::cos;
  T c = cos(x.val);
  return {tan(x.val), x.der / (c * c)};
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.val);
  return {e, x.der * e};
}

template <class T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.val), x.der / x.val};
}

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T s = sqrt(x.val);
  return {s, x.der / (2.0 * s)};
}

template <class T>
Dual<T> sinh(const Dual<T>& x) {
  using std::sinh; using std::cosh;
  return {sinh(x.val), x.der * cosh(x.val)};
}

template <class T>
Dual<T> cosh(const Dual<T>& x) {
  using std::sinh; using std::cosh;
  return {cosh(x.val), x.der * sinh(x.val)};
}

// x^p for real exponent, defined for real_part(x) > 0 (all catalog uses).
template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
  using std::pow;
  T v = pow(x.val, p);
  return {v, x.der * (p * pow(x.val, p - 1.0))};
}

}  // namespace tbgeo
