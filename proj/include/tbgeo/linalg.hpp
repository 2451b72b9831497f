// linalg.hpp - small dense containers generic over the scalar type.
//
// The geometric kernels run unchanged over double and over nested dual
// numbers, so the containers here are templated on the scalar and implement
// only what those kernels need: storage, Gauss-Jordan inversion (pivoting on
// the real part, the only total order a dual number has), and scaled
// accumulation for finite-difference combinations.  Heavy double-precision
// work (SVD least squares, condition numbers, definiteness) is delegated to
// Eigen behind the free functions at the bottom.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "tbgeo/dual.hpp"
#include "tbgeo/errors.hpp"

namespace tbgeo {

template <class T>
using Vec = std::vector<T>;

template <class T>
class SquareMat {
 public:
  SquareMat() : n_(0) {}
  explicit SquareMat(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, T{}) {}

  int dim() const { return n_; }
  T& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<T>& data() const { return d_; }
  std::vector<T>& data() { return d_; }

  static SquareMat identity(int n) {
    SquareMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }

  void add_scaled(const SquareMat& o, double s) {
    for (std::size_t k = 0; k < d_.size(); ++k) d_[k] += o.d_[k] * s;
  }
  void scale(double s) {
    for (auto& v : d_) v = v * s;
  }

 private:
  int n_;
  std::vector<T> d_;
};

// Rank-3/4/5 tensors with one common axis length n (all we ever need).
template <class T, int R>
class TensorN {
 public:
  TensorN() : n_(0) {}
  explicit TensorN(int n) : n_(n) {
    std::size_t sz = 1;
    for (int r = 0; r < R; ++r) sz *= static_cast<std::size_t>(n);
    d_.assign(sz, T{});
  }

  int dim() const { return n_; }

  template <class... I>
  T& operator()(I... idx) {
    static_assert(sizeof...(I) == R, "index count must match tensor rank");
    return d_[flat(idx...)];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    static_assert(sizeof...(I) == R, "index count must match tensor rank");
    return d_[flat(idx...)];
  }

  const std::vector<T>& data() const { return d_; }
  std::vector<T>& data() { return d_; }

  void add_scaled(const TensorN& o, double s) {
    for (std::size_t k = 0; k < d_.size(); ++k) d_[k] += o.d_[k] * s;
  }
  void scale(double s) {
    for (auto& v : d_) v = v * s;
  }

 private:
  template <class... I>
  std::size_t flat(I... idx) const {
    std::size_t f = 0;
    for (int i : std::array<int, R>{static_cast<int>(idx)...}) f = f * n_ + static_cast<std::size_t>(i);
    return f;
  }
  int n_;
  std::vector<T> d_;
};

template <class T> using Ten3 = TensorN<T, 3>;
template <class T> using Ten4 = TensorN<T, 4>;
template <class T> using Ten5 = TensorN<T, 5>;

// Largest |entry| by real part (sup norm used in flatness checks and report
// aggregates; for dual-valued tensors only the value part is measured).
template <class C>
double sup_norm(const C& c) {
  double m = 0.0;
  for (const auto& v : c.data()) m = std::max(m, std::abs(real_part(v)));
  return m;
}

inline double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Frobenius norm over raw entries (double-valued containers).
template <class C>
double frob_norm(const C& c) {
  double s = 0.0;
  for (const auto& v : c.data()) s += real_part(v) * real_part(v);
  return std::sqrt(s);
}

// Gauss-Jordan inverse with partial pivoting on |real_part|, the ordering that
// makes sense for dual scalars (a pivot is singular iff its value part is).
// Throws SingularMetricError on an exactly/near-zero pivot; callers that need
// a quantitative condition bound use condition_estimate() beforehand.
template <class T>
SquareMat<T> inverse(const SquareMat<T>& a) {
  const int n = a.dim();
  SquareMat<T> m = a;
  SquareMat<T> inv = SquareMat<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(real_part(m(col, col)));
    for (int r = col + 1; r < n; ++r) {
      double cand = std::abs(real_part(m(r, col)));
      if (cand > best) { best = cand; piv = r; }
    }
    if (!(best > 1e-300)) throw SingularMetricError("matrix inversion hit a zero pivot");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(m(col, j), m(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    }
    T diag = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) = m(col, j) / diag;
      inv(col, j) = inv(col, j) / diag;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      T f = m(r, col);
      if (real_part(f) == 0.0 && !all_finite(f)) throw SingularMetricError("non-finite entry during inversion");
      for (int j = 0; j < n; ++j) {
        m(r, j) = m(r, j) - f * m(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

template <class T>
Vec<T> mat_vec(const SquareMat<T>& a, const Vec<T>& x) {
  const int n = a.dim();
  Vec<T> y(static_cast<std::size_t>(n), T{});
  for (int i = 0; i < n; ++i) {
    T s{};
    for (int j = 0; j < n; ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

template <class T>
SquareMat<T> mat_mul(const SquareMat<T>& a, const SquareMat<T>& b) {
  const int n = a.dim();
  SquareMat<T> c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      T aik = a(i, k);
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

// ---- double-precision services backed by Eigen (defined in src/linalg.cpp) --

// 2-norm condition number estimate via SVD.
double condition_estimate(const SquareMat<double>& m);

// Symmetric positive definiteness via LDLT with a relative eigen floor.
bool is_positive_definite(const SquareMat<double>& m);

// Minimum-norm least-squares solution of the rows-x-cols system A u = b,
// A given in row-major order.  Returns u (size cols).
std::vector<double> lstsq_min_norm(int rows, int cols, const std::vector<double>& a,
                                   const std::vector<double>& b);

}  // namespace tbgeo
