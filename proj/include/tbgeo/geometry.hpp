// geometry.hpp - Christoffel symbols, curvature, and covariant curvature
// derivative of a coordinate metric.
//
// Index conventions (fixed project-wide):
//   gamma(l,i,j)        = Gamma^l_{ij}
//                       = 1/2 g^{lm} (d_i g_{jm} + d_j g_{im} - d_m g_{ij})
//   riemann(l,i,j,k)    = l-component of R(e_i,e_j)e_k,
//                         R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   nabla_riemann(w,l,i,j,k) = (nabla_w R)^l_{ijk}
// The kernels are templated on the scalar so the same code runs at double and
// at every dual depth -- that is what lets the brute-force bundle oracle
// differentiate *through* them.  In finite-difference mode the outer
// derivative is a stencil, so those paths only accept plain doubles.
#pragma once

#include "tbgeo/calculus.hpp"
#include "tbgeo/linalg.hpp"
#include "tbgeo/metric.hpp"

namespace tbgeo {

inline constexpr double kConditionCeiling = 1e12;

// dg(k,i,j) = d_k g_ij at x.
template <class S>
Ten3<S> metric_grad(const MetricSpec& m, const Vec<S>& x, const DiffConfig& cfg) {
  const int n = m.dim;
  Ten3<S> dg(n);
  if (cfg.mode == DiffMode::dual) {
    for (int k = 0; k < n; ++k) {
      auto gk = metric_at<Dual<S>>(m, promote_and_seed(x, k));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dg(k, i, j) = gk(i, j).der;
    }
  } else {
    if constexpr (std::is_same_v<S, double>) {
      auto per_dir = fd_grad_all<SquareMat<double>>(
          [&](const Vec<double>& xs) { return metric_at<double>(m, xs); }, x, cfg);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) dg(k, i, j) = per_dir[static_cast<std::size_t>(k)](i, j);
    } else {
      throw OrderError("finite-difference mode cannot differentiate dual-valued points");
    }
  }
  return dg;
}

template <class S>
Ten3<S> christoffel_t(const MetricSpec& m, const Vec<S>& x, const DiffConfig& cfg) {
  const int n = m.dim;
  SquareMat<S> g = metric_at<S>(m, x);
  SquareMat<S> gi = inverse(g);
  Ten3<S> dg = metric_grad(m, x, cfg);
  Ten3<S> gamma(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        S s{};
        for (int mm = 0; mm < n; ++mm)
          s += gi(l, mm) * (dg(i, j, mm) + dg(j, i, mm) - dg(mm, i, j));
        gamma(l, i, j) = 0.5 * s;
      }
  return gamma;
}

template <class S>
Ten4<S> riemann_t(const MetricSpec& m, const Vec<S>& x, const DiffConfig& cfg) {
  const int n = m.dim;
  Ten3<S> gamma = christoffel_t(m, x, cfg);
  // dgamma(w,l,i,j) = d_w Gamma^l_{ij}
  Ten4<S> dgamma(n);
  if (cfg.mode == DiffMode::dual) {
    for (int w = 0; w < n; ++w) {
      auto gw = christoffel_t<Dual<S>>(m, promote_and_seed(x, w), cfg);
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) dgamma(w, l, i, j) = gw(l, i, j).der;
    }
  } else {
    if constexpr (std::is_same_v<S, double>) {
      auto per_dir = fd_grad_all<Ten3<double>>(
          [&](const Vec<double>& xs) { return christoffel_t<double>(m, xs, cfg); }, x, cfg);
      for (int w = 0; w < n; ++w)
        for (int l = 0; l < n; ++l)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dgamma(w, l, i, j) = per_dir[static_cast<std::size_t>(w)](l, i, j);
    } else {
      throw OrderError("finite-difference mode cannot differentiate dual-valued points");
    }
  }
  Ten4<S> rm(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          S s = dgamma(i, l, j, k) - dgamma(j, l, i, k);
          for (int mm = 0; mm < n; ++mm)
            s += gamma(l, i, mm) * gamma(mm, j, k) - gamma(l, j, mm) * gamma(mm, i, k);
          rm(l, i, j, k) = s;
        }
  return rm;
}

template <class S>
Ten5<S> nabla_riemann_t(const MetricSpec& m, const Vec<S>& x, const DiffConfig& cfg) {
  const int n = m.dim;
  Ten3<S> gamma = christoffel_t(m, x, cfg);
  Ten4<S> rm = riemann_t(m, x, cfg);
  // drm(w,l,i,j,k) = d_w R^l_{ijk}
  Ten5<S> drm(n);
  if (cfg.mode == DiffMode::dual) {
    for (int w = 0; w < n; ++w) {
      auto rw = riemann_t<Dual<S>>(m, promote_and_seed(x, w), cfg);
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) drm(w, l, i, j, k) = rw(l, i, j, k).der;
    }
  } else {
    if constexpr (std::is_same_v<S, double>) {
      auto per_dir = fd_grad_all<Ten4<double>>(
          [&](const Vec<double>& xs) { return riemann_t<double>(m, xs, cfg); }, x, cfg);
      for (int w = 0; w < n; ++w)
        for (int l = 0; l < n; ++l)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k) drm(w, l, i, j, k) = per_dir[static_cast<std::size_t>(w)](l, i, j, k);
    } else {
      throw OrderError("finite-difference mode cannot differentiate dual-valued points");
    }
  }
  Ten5<S> nr(n);
  for (int w = 0; w < n; ++w)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            S s = drm(w, l, i, j, k);
            for (int mm = 0; mm < n; ++mm)
              s += gamma(l, w, mm) * rm(mm, i, j, k)
                 - gamma(mm, w, i) * rm(l, mm, j, k)
                 - gamma(mm, w, j) * rm(l, i, mm, k)
                 - gamma(mm, w, k) * rm(l, i, j, mm);
            nr(w, l, i, j, k) = s;
          }
  return nr;
}

// Everything the lift needs about the base geometry at one point, computed
// once and cached.
struct CurvatureBundle {
  Vec<double> x;
  SquareMat<double> g;
  SquareMat<double> g_inv;
  Ten3<double> gamma;
  Ten4<double> riemann;
  Ten5<double> nabla_riemann;
};

// Worst violation of each structural identity the tensors must satisfy.
struct InvariantReport {
  double gamma_symmetry = 0.0;        // Gamma^l_{ij} - Gamma^l_{ji}
  double metric_compatibility = 0.0;  // nabla_k g_ij
  double riemann_antisymmetry = 0.0;  // R^l_{ijk} + R^l_{jik}
  double first_bianchi = 0.0;         // cyclic sum over the three lower slots
  double lowered_symmetries = 0.0;    // R_{ijka} = -R_{ijak}, R_{ijka} = R_{kaij}
  double second_bianchi = 0.0;        // cyclic sum of nabla R

  double max_violation() const;
};

// Public double-precision entry points.  Each validates the metric at x:
// symmetric, positive definite, condition number <= kConditionCeiling
// (SingularMetricError beyond it).
SquareMat<double> metric_value(const MetricSpec& m, const Vec<double>& x);
Ten3<double> christoffel(const MetricSpec& m, const Vec<double>& x, const DiffConfig& cfg = {});
Ten4<double> riemann(const MetricSpec& m, const Vec<double>& x, const DiffConfig& cfg = {});
Ten5<double> nabla_riemann(const MetricSpec& m, const Vec<double>& x, const DiffConfig& cfg = {});
CurvatureBundle curvature_bundle(const MetricSpec& m, const Vec<double>& x, const DiffConfig& cfg = {});

InvariantReport check_invariants(const MetricSpec& m, const CurvatureBundle& b, const DiffConfig& cfg = {});

// Sectional curvature of the coordinate plane (e_i, e_j):
//   K = <R(e_i,e_j)e_j, e_i> / (g_ii g_jj - g_ij^2).
double sectional_curvature(const CurvatureBundle& b, int i, int j);

}  // namespace tbgeo
