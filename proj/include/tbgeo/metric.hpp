// metric.hpp - coordinate metrics as matrix-valued fields with a derivative tower.
//
// A MetricSpec is "a chart plus g_ij(x)": symmetric matrix entries given by
// one generic formula, instantiated at every dual depth up to a declared
// maximum.  The maximum is a hard budget, not a hint -- evaluating deeper
// throws OrderError rather than silently degrading, because a too-shallow
// tower means a derivative the caller is about to trust would be wrong.
// Catalog metrics carry the full depth-4 tower; the synthesized bundle metric
// stops at depth 3 (it already spends one level on base Christoffels).
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tbgeo/calculus.hpp"
#include "tbgeo/dual.hpp"
#include "tbgeo/errors.hpp"
#include "tbgeo/linalg.hpp"

namespace tbgeo {

struct MatrixField {
  int dim = 0;
  int max_depth = 0;
  std::function<SquareMat<double>(const Vec<double>&)> m0;
  std::function<SquareMat<D1>(const Vec<D1>&)> m1;
  std::function<SquareMat<D2>(const Vec<D2>&)> m2;
  std::function<SquareMat<D3>(const Vec<D3>&)> m3;
  std::function<SquareMat<D4>(const Vec<D4>&)> m4;
};

// MaxDepth is a template parameter so that a formula that is only meaningful
// to a certain depth (the bundle metric) is never *instantiated* deeper.
template <int MaxDepth = 4, class F>
MatrixField make_matrix_field(int dim, F f) {
  static_assert(0 <= MaxDepth && MaxDepth <= 4);
  MatrixField m;
  m.dim = dim;
  m.max_depth = MaxDepth;
  m.m0 = f;
  if constexpr (MaxDepth >= 1) m.m1 = f;
  if constexpr (MaxDepth >= 2) m.m2 = f;
  if constexpr (MaxDepth >= 3) m.m3 = f;
  if constexpr (MaxDepth >= 4) m.m4 = f;
  return m;
}

template <class S>
SquareMat<S> eval_matrix(const MatrixField& f, const Vec<S>& x) {
  constexpr int depth = dual_depth_v<S>;
  static_assert(depth <= 4);
  if (depth > f.max_depth)
    throw OrderError("matrix field evaluated at dual depth " + std::to_string(depth) +
                     " but its derivative tower stops at " + std::to_string(f.max_depth));
  if constexpr (depth == 0) return f.m0(x);
  else if constexpr (depth == 1) return f.m1(x);
  else if constexpr (depth == 2) return f.m2(x);
  else if constexpr (depth == 3) return f.m3(x);
  else return f.m4(x);
}

// A Riemannian metric in one coordinate chart.
struct MetricSpec {
  std::string name;
  int dim = 0;
  MatrixField field;
  std::function<bool(const Vec<double>&)> domain;  // empty: all finite points
};

// Evaluate g at x (any dual depth), checking dimension and chart domain on the
// real parts.  This is the single entry point every kernel goes through.
template <class S>
SquareMat<S> metric_at(const MetricSpec& m, const Vec<S>& x) {
  detail::check_point(m.dim, m.domain, x);
  SquareMat<S> g = eval_matrix<S>(m.field, x);
  if (g.dim() != m.dim) throw DimensionMismatchError("metric field returned wrong matrix size");
  return g;
}

}  // namespace tbgeo
