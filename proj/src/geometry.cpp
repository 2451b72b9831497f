// geometry.cpp - validated double-precision geometry entry points.
#include "tbgeo/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace tbgeo {

double InvariantReport::max_violation() const {
  return std::max({gamma_symmetry, metric_compatibility, riemann_antisymmetry, first_bianchi,
                   lowered_symmetries, second_bianchi});
}

namespace {

// One gate for every public op: the metric at the evaluation point must be a
// symmetric positive-definite matrix with bounded condition number.
SquareMat<double> validated_metric(const MetricSpec& m, const Vec<double>& x) {
  SquareMat<double> g = metric_at<double>(m, x);
  const int n = g.dim();
  double asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) asym = std::max(asym, std::abs(g(i, j) - g(j, i)));
  if (asym > 1e-12)
    throw ParamError("metric matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  double cond = condition_estimate(g);
  if (!(cond <= kConditionCeiling))
    throw SingularMetricError("metric condition number " + std::to_string(cond) +
                              " exceeds ceiling 1e12");
  if (!is_positive_definite(g))
    throw SingularMetricError("metric is not positive definite at the evaluation point");
  return g;
}

}  // namespace

SquareMat<double> metric_value(const MetricSpec& m, const Vec<double>& x) {
  return validated_metric(m, x);
}

Ten3<double> christoffel(const MetricSpec& m, const Vec<double>& x, const DiffConfig& cfg) {
  cfg.validate();
  validated_metric(m, x);
  return christoffel_t<double>(m, x, cfg);
}

Ten4<double> riemann(const MetricSpec& m, const Vec<double>& x, const DiffConfig& cfg) {
  cfg.validate();
  validated_metric(m, x);
  return riemann_t<double>(m, x, cfg);
}

Ten5<double> nabla_riemann(const MetricSpec& m, const Vec<double>& x, const DiffConfig& cfg) {
  cfg.validate();
  validated_metric(m, x);
  return nabla_riemann_t<double>(m, x, cfg);
}

CurvatureBundle curvature_bundle(const MetricSpec& m, const Vec<double>& x, const DiffConfig& cfg) {
  cfg.validate();
  CurvatureBundle b;
  b.x = x;
  b.g = validated_metric(m, x);
  b.g_inv = inverse(b.g);
  b.gamma = christoffel_t<double>(m, x, cfg);
  b.riemann = riemann_t<double>(m, x, cfg);
  b.nabla_riemann = nabla_riemann_t<double>(m, x, cfg);
  return b;
}

InvariantReport check_invariants(const MetricSpec& m, const CurvatureBundle& b, const DiffConfig& cfg) {
  const int n = b.g.dim();
  InvariantReport r;

  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.gamma_symmetry = std::max(r.gamma_symmetry, std::abs(b.gamma(l, i, j) - b.gamma(l, j, i)));

  // nabla_k g_ij = d_k g_ij - Gamma^m_{ki} g_mj - Gamma^m_{kj} g_im
  Ten3<double> dg = metric_grad<double>(m, b.x, cfg);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = dg(k, i, j);
        for (int mm = 0; mm < n; ++mm)
          v -= b.gamma(mm, k, i) * b.g(mm, j) + b.gamma(mm, k, j) * b.g(i, mm);
        r.metric_compatibility = std::max(r.metric_compatibility, std::abs(v));
      }

  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          r.riemann_antisymmetry = std::max(
              r.riemann_antisymmetry, std::abs(b.riemann(l, i, j, k) + b.riemann(l, j, i, k)));
          r.first_bianchi = std::max(
              r.first_bianchi,
              std::abs(b.riemann(l, i, j, k) + b.riemann(l, j, k, i) + b.riemann(l, k, i, j)));
        }

  // Lowered tensor R_{ijka} = <R(e_i,e_j)e_k, e_a>: antisymmetric in (k,a),
  // symmetric under pair exchange (i,j) <-> (k,a).
  Ten4<double> low(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += b.g(a, l) * b.riemann(l, i, j, k);
          low(i, j, k, a) = s;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a) {
          r.lowered_symmetries =
              std::max(r.lowered_symmetries, std::abs(low(i, j, k, a) + low(i, j, a, k)));
          r.lowered_symmetries =
              std::max(r.lowered_symmetries, std::abs(low(i, j, k, a) - low(k, a, i, j)));
        }

  // Second Bianchi: cyclic sum over the derivative slot and the curvature
  // plane slots of (nabla_w R)^l_{ijk}.
  for (int w = 0; w < n; ++w)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            double v = b.nabla_riemann(w, l, i, j, k) + b.nabla_riemann(i, l, j, w, k) +
                       b.nabla_riemann(j, l, w, i, k);
            r.second_bianchi = std::max(r.second_bianchi, std::abs(v));
          }

  return r;
}

double sectional_curvature(const CurvatureBundle& b, int i, int j) {
  const int n = b.g.dim();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw DimensionMismatchError("sectional curvature needs two distinct coordinate indices");
  double num = 0.0;
  for (int l = 0; l < n; ++l) num += b.g(i, l) * b.riemann(l, i, j, j);
  double den = b.g(i, i) * b.g(j, j) - b.g(i, j) * b.g(i, j);
  return num / den;
}

}  // namespace tbgeo
