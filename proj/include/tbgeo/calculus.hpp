// calculus.hpp - partial derivatives of chart-domain fields, two ways.
//
// Everything downstream (Christoffel symbols, curvature, the brute-force
// bundle oracle) reduces to "differentiate this field at this point".  Two
// interchangeable engines implement that:
//   * dual       - nested forward-mode dual numbers, exact to round-off;
//   * finite_difference - central stencils of order 2/4/6, the independent
//     cross-check (same code path shape, totally different error model).
// Derivative order is capped at 3 per request; combined with the one extra
// level the bundle metric consumes internally, nothing ever exceeds the
// depth-4 dual tower.
#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tbgeo/dual.hpp"
#include "tbgeo/errors.hpp"
#include "tbgeo/linalg.hpp"

namespace tbgeo {

enum class DiffMode { dual, finite_difference };

inline const char* to_string(DiffMode m) {
  return m == DiffMode::dual ? "dual" : "finite_difference";
}

struct DiffConfig {
  DiffMode mode = DiffMode::dual;
  double fd_step = 1e-4;  // relative step; per-coordinate h_i = fd_step * max(1, |x_i|)
  int fd_order = 4;       // stencil accuracy order: 2, 4, or 6

  void validate() const {
    if (fd_order != 2 && fd_order != 4 && fd_order != 6)
      throw OrderError("fd_order must be 2, 4, or 6; got " + std::to_string(fd_order));
    if (!(fd_step > 0.0))
      throw ParamError("fd_step must be positive; got " + std::to_string(fd_step));
  }
};

// Central first-derivative stencil: f'(x) ~ sum_s coeff[s] * f(x + offset[s]*h) / h.
struct Stencil {
  std::vector<int> offsets;
  std::vector<double> coeffs;
};

inline const Stencil& first_derivative_stencil(int order) {
  static const Stencil s2{{-1, 1}, {-0.5, 0.5}};
  static const Stencil s4{{-2, -1, 1, 2}, {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12}};
  static const Stencil s6{{-3, -2, -1, 1, 2, 3},
                          {-1.0 / 60, 9.0 / 60, -45.0 / 60, 45.0 / 60, -9.0 / 60, 1.0 / 60}};
  switch (order) {
    case 2: return s2;
    case 4: return s4;
    case 6: return s6;
    default: throw OrderError("no central stencil of order " + std::to_string(order));
  }
}

// Promote a point one dual level, seeding coordinate `dir` with derivative 1.
template <class S>
Vec<Dual<S>> promote_and_seed(const Vec<S>& x, int dir) {
  Vec<Dual<S>> xs(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    xs[j] = Dual<S>(x[j], S(static_cast<int>(j) == dir ? 1.0 : 0.0));
  return xs;
}

// ---- scalar fields -----------------------------------------------------------

// A smooth real-valued function on a chart domain, evaluable at every dual
// depth up to max_depth.  The per-depth std::functions are instantiated from
// one generic callable by make_scalar_field, so all levels share one formula.
struct ScalarField {
  int dim = 0;
  int max_depth = 0;
  std::function<bool(const Vec<double>&)> domain;  // empty: all finite points
  std::function<double(const Vec<double>&)> f0;
  std::function<D1(const Vec<D1>&)> f1;
  std::function<D2(const Vec<D2>&)> f2;
  std::function<D3(const Vec<D3>&)> f3;
  std::function<D4(const Vec<D4>&)> f4;
};

template <int MaxDepth = 4, class F>
ScalarField make_scalar_field(int dim, F f, std::function<bool(const Vec<double>&)> domain = {}) {
  static_assert(0 <= MaxDepth && MaxDepth <= 4);
  ScalarField s;
  s.dim = dim;
  s.max_depth = MaxDepth;
  s.domain = std::move(domain);
  s.f0 = f;
  if constexpr (MaxDepth >= 1) s.f1 = f;
  if constexpr (MaxDepth >= 2) s.f2 = f;
  if constexpr (MaxDepth >= 3) s.f3 = f;
  if constexpr (MaxDepth >= 4) s.f4 = f;
  return s;
}

namespace detail {

template <class S>
void check_point(int dim, const std::function<bool(const Vec<double>&)>& domain, const Vec<S>& x) {
  if (static_cast<int>(x.size()) != dim)
    throw DimensionMismatchError("point has dimension " + std::to_string(x.size()) +
                                 ", field expects " + std::to_string(dim));
  Vec<double> xr(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xr[i] = real_part(x[i]);
    if (!std::isfinite(xr[i])) throw DomainError("non-finite coordinate in evaluation point");
  }
  if (domain && !domain(xr)) throw DomainError("evaluation point outside chart domain");
}

}  // namespace detail

template <class S>
S eval_scalar(const ScalarField& f, const Vec<S>& x) {
  detail::check_point(f.dim, f.domain, x);
  constexpr int depth = dual_depth_v<S>;
  static_assert(depth <= 4);
  if (depth > f.max_depth)
    throw OrderError("field evaluated at dual depth " + std::to_string(depth) +
                     " but its derivative tower stops at " + std::to_string(f.max_depth));
  if constexpr (depth == 0) return f.f0(x);
  else if constexpr (depth == 1) return f.f1(x);
  else if constexpr (depth == 2) return f.f2(x);
  else if constexpr (depth == 3) return f.f3(x);
  else return f.f4(x);
}

namespace detail {

inline double extract_corner(double s) { return s; }
template <class T>
double extract_corner(const Dual<T>& s) { return extract_corner(s.der); }

template <class S>
void seed_levels(S& out, double xj, int j, const int* idx, int depth) {
  if constexpr (std::is_same_v<S, double>) {
    (void)idx; (void)depth;
    out = xj;
  } else {
    seed_levels(out.val, xj, j, idx, depth - 1);
    // Seed this nesting level's direction: 1 if this coordinate is the one
    // being differentiated at level `depth`, as a constant of the inner type.
    if (idx[depth - 1] == j) {
      using Inner = std::remove_reference_t<decltype(out.der)>;
      out.der = Inner(1.0);
    }
  }
}

// Exact mixed partial of order K via one nested-dual evaluation: coordinate j
// is seeded with derivative 1 at nesting level l iff idx[l] == j, then the
// all-derivative corner of the result is the partial (order of the indices is
// immaterial -- the algebra computes the same coefficient either way).
template <int K>
double dual_partial(const ScalarField& f, const Vec<double>& x, const int* idx) {
  if constexpr (K == 0) {
    return eval_scalar<double>(f, x);
  } else {
    using S = std::conditional_t<K == 1, D1, std::conditional_t<K == 2, D2, D3>>;
    Vec<S> xs(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      S c{};
      seed_levels<S>(c, x[j], static_cast<int>(j), idx, K);
      xs[j] = c;
    }
    return extract_corner(eval_scalar<S>(f, xs));
  }
}

inline double fd_partial(const ScalarField& f, Vec<double> x, std::span<const int> idx,
                         const DiffConfig& cfg) {
  if (idx.empty()) return eval_scalar<double>(f, x);
  const int dir = idx.back();
  const auto rest = idx.first(idx.size() - 1);
  const Stencil& st = first_derivative_stencil(cfg.fd_order);
  const double h = cfg.fd_step * std::max(1.0, std::abs(x[static_cast<std::size_t>(dir)]));
  const double x0 = x[static_cast<std::size_t>(dir)];
  double acc = 0.0;
  for (std::size_t s = 0; s < st.offsets.size(); ++s) {
    x[static_cast<std::size_t>(dir)] = x0 + st.offsets[s] * h;
    acc += st.coeffs[s] * fd_partial(f, x, rest, cfg);
  }
  return acc / h;
}

}  // namespace detail

// Mixed partial d^k f / dx_{i1} ... dx_{ik} at x, k = multi_index.size() <= 3.
// multi_index entries are coordinate indices; a repeated entry is a repeated
// derivative in that coordinate.  Engine chosen by cfg.mode.
inline double partial(const ScalarField& f, const Vec<double>& x, std::span<const int> multi_index,
                      const DiffConfig& cfg = {}) {
  cfg.validate();
  detail::check_point(f.dim, f.domain, x);
  if (multi_index.size() > 3)
    throw OrderError("derivative order " + std::to_string(multi_index.size()) +
                     " exceeds the supported maximum of 3");
  if (static_cast<int>(multi_index.size()) > f.max_depth)
    throw OrderError("derivative order exceeds this field's declared smoothness depth");
  for (int i : multi_index)
    if (i < 0 || i >= f.dim)
      throw DimensionMismatchError("multi_index entry " + std::to_string(i) + " out of range");
  if (cfg.mode == DiffMode::dual) {
    switch (multi_index.size()) {
      case 0: return detail::dual_partial<0>(f, x, multi_index.data());
      case 1: return detail::dual_partial<1>(f, x, multi_index.data());
      case 2: return detail::dual_partial<2>(f, x, multi_index.data());
      default: return detail::dual_partial<3>(f, x, multi_index.data());
    }
  }
  return detail::fd_partial(f, x, multi_index, cfg);
}

inline double partial(const ScalarField& f, const Vec<double>& x,
                      std::initializer_list<int> multi_index, const DiffConfig& cfg = {}) {
  return partial(f, x, std::span<const int>(multi_index.begin(), multi_index.size()), cfg);
}

// ---- finite-difference gradients of container-valued maps --------------------

// d/dx_k of eval(x) for every k, where eval returns a tensor container with
// add_scaled/scale.  Used by the geometry kernels in finite-difference mode.
template <class Out, class F>
std::vector<Out> fd_grad_all(F&& eval, const Vec<double>& x, const DiffConfig& cfg) {
  const Stencil& st = first_derivative_stencil(cfg.fd_order);
  const int n = static_cast<int>(x.size());
  std::vector<Out> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double h = cfg.fd_step * std::max(1.0, std::abs(x[static_cast<std::size_t>(k)]));
    Vec<double> xs = x;
    xs[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + st.offsets[0] * h;
    Out acc = eval(xs);
    acc.scale(st.coeffs[0] / h);
    for (std::size_t s = 1; s < st.offsets.size(); ++s) {
      xs[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + st.offsets[s] * h;
      acc.add_scaled(eval(xs), st.coeffs[s] / h);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace tbgeo
