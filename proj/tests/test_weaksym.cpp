// Weak-symmetry solver: synthetic systems with known covectors, residual
// invariances, and the bundle/base classification experiments.
#include <doctest.h>

#include <cmath>

#include "tbgeo/catalog.hpp"
#include "tbgeo/errors.hpp"
#include "tbgeo/oracle.hpp"
#include "tbgeo/rng.hpp"
#include "tbgeo/weaksym.hpp"

using namespace tbgeo;

namespace {

SquareMat<double> identity(int m) {
  SquareMat<double> g(m);
  for (int i = 0; i < m; ++i) g(i, i) = 1.0;
  return g;
}

SquareMat<double> random_spd(int m, SplitMix64& rng) {
  SquareMat<double> g = identity(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      double u = 0.3 * rng.next_uniform(-0.5, 0.5);
      g(i, j) += u;
      g(j, i) += (i == j) ? 0.0 : u;
    }
  return g;
}

Ten4<double> random_ten4(int m, SplitMix64& rng) {
  Ten4<double> t(m);
  for (auto& v : t.data()) v = rng.next_uniform(-1.0, 1.0);
  return t;
}

Ten5<double> random_ten5(int m, SplitMix64& rng) {
  Ten5<double> t(m);
  for (auto& v : t.data()) v = rng.next_uniform(-1.0, 1.0);
  return t;
}

// Assemble nrm so that (alpha1, alpha2) satisfies the defining identity
// exactly -- the ground truth the solver must recover.
Ten5<double> build_nrm(const SquareMat<double>& g, const SquareMat<double>& g_inv,
                       const Ten4<double>& rm, const Vec<double>& a1, const Vec<double>& a2) {
  const int m = rm.dim();
  Vec<double> a2_up(static_cast<std::size_t>(m), 0.0);
  for (int l = 0; l < m; ++l)
    for (int p = 0; p < m; ++p) a2_up[static_cast<std::size_t>(l)] += g_inv(l, p) * a2[static_cast<std::size_t>(p)];
  Ten5<double> nrm(m);
  for (int w = 0; w < m; ++w)
    for (int l = 0; l < m; ++l)
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
          for (int z = 0; z < m; ++z) {
            double lowered = 0.0;
            for (int q = 0; q < m; ++q) lowered += rm(q, x, y, z) * g(q, w);
            nrm(w, l, x, y, z) = a1[static_cast<std::size_t>(w)] * rm(l, x, y, z) +
                                 a2[static_cast<std::size_t>(x)] * rm(l, w, y, z) +
                                 a2[static_cast<std::size_t>(y)] * rm(l, x, w, z) +
                                 a2[static_cast<std::size_t>(z)] * rm(l, x, y, w) +
                                 lowered * a2_up[static_cast<std::size_t>(l)];
          }
  return nrm;
}

}  // namespace

TEST_CASE("solve mode names round-trip") {
  for (auto m : {SolveMode::weak, SolveMode::recurrent, SolveMode::pseudo,
                 SolveMode::locally_symmetric})
    CHECK(solve_mode_from_string(to_string(m)) == m);
  CHECK_THROWS_AS(solve_mode_from_string("florp"), UnknownEntryError);
}

TEST_CASE("solver recovers planted covectors exactly") {
  const int m = 3;
  SplitMix64 rng(101);
  SquareMat<double> g = random_spd(m, rng);
  SquareMat<double> g_inv = inverse(g);
  Ten4<double> rm = random_ten4(m, rng);
  Vec<double> a1{0.7, -1.3, 0.25}, a2{-0.4, 0.9, 1.1};

  SUBCASE("weak mode, both covectors free") {
    Ten5<double> nrm = build_nrm(g, g_inv, rm, a1, a2);
    WeakSymSolution s = solve_pointwise(g, g_inv, rm, nrm, SolveMode::weak);
    CHECK(s.residual <= 1e-10);
    CHECK_FALSE(s.approximate);
    for (int i = 0; i < m; ++i) {
      CHECK(s.alpha1[static_cast<std::size_t>(i)] ==
            doctest::Approx(a1[static_cast<std::size_t>(i)]).epsilon(1e-8));
      CHECK(s.alpha2[static_cast<std::size_t>(i)] ==
            doctest::Approx(a2[static_cast<std::size_t>(i)]).epsilon(1e-8));
    }
  }

  SUBCASE("recurrent mode: alpha2 pinned to zero") {
    Ten5<double> nrm = build_nrm(g, g_inv, rm, a1, Vec<double>(m, 0.0));
    WeakSymSolution s = solve_pointwise(g, g_inv, rm, nrm, SolveMode::recurrent);
    CHECK(s.residual <= 1e-10);
    for (int i = 0; i < m; ++i) {
      CHECK(s.alpha1[static_cast<std::size_t>(i)] ==
            doctest::Approx(a1[static_cast<std::size_t>(i)]).epsilon(1e-8));
      CHECK(s.alpha2[static_cast<std::size_t>(i)] == 0.0);
    }
    // The weak solve can only do at least as well on the same data.
    WeakSymSolution w = solve_pointwise(g, g_inv, rm, nrm, SolveMode::weak);
    CHECK(w.residual <= s.residual + 1e-10);
  }

  SUBCASE("pseudo mode: alpha1 = 2 alpha2") {
    Vec<double> beta{0.6, -0.2, 0.8};
    Vec<double> twob{1.2, -0.4, 1.6};
    Ten5<double> nrm = build_nrm(g, g_inv, rm, twob, beta);
    WeakSymSolution s = solve_pointwise(g, g_inv, rm, nrm, SolveMode::pseudo);
    CHECK(s.residual <= 1e-10);
    for (int i = 0; i < m; ++i) {
      CHECK(s.alpha2[static_cast<std::size_t>(i)] ==
            doctest::Approx(beta[static_cast<std::size_t>(i)]).epsilon(1e-8));
      CHECK(s.alpha1[static_cast<std::size_t>(i)] ==
            doctest::Approx(twob[static_cast<std::size_t>(i)]).epsilon(1e-8));
    }
  }

  SUBCASE("locally symmetric mode: nrm = 0 satisfied with empty unknowns") {
    Ten5<double> zero(m);
    WeakSymSolution s = solve_pointwise(g, g_inv, rm, zero, SolveMode::locally_symmetric);
    CHECK(s.residual == 0.0);
    for (double v : s.alpha1) CHECK(v == 0.0);
    for (double v : s.alpha2) CHECK(v == 0.0);
  }
}

TEST_CASE("both tensors zero canonicalizes to the trivial solution") {
  const int m = 3;
  SquareMat<double> g = identity(m);
  WeakSymSolution s = solve_pointwise(g, g, Ten4<double>(m), Ten5<double>(m), SolveMode::weak);
  CHECK(s.residual == 0.0);
  CHECK_FALSE(s.approximate);
  for (double v : s.alpha1) CHECK(v == 0.0);
  for (double v : s.alpha2) CHECK(v == 0.0);
}

TEST_CASE("residuals are monotone in the unknown subspace") {
  // locally symmetric <= recurrent/pseudo <= weak as subspaces, so the
  // residuals order the other way on arbitrary (unstructured) data.
  const int m = 3;
  SplitMix64 rng(202);
  SquareMat<double> g = random_spd(m, rng);
  SquareMat<double> g_inv = inverse(g);
  Ten4<double> rm = random_ten4(m, rng);
  Ten5<double> nrm = random_ten5(m, rng);
  auto res = [&](SolveMode mode) { return solve_pointwise(g, g_inv, rm, nrm, mode).residual; };
  double weak = res(SolveMode::weak);
  double rec = res(SolveMode::recurrent);
  double pseudo = res(SolveMode::pseudo);
  double ls = res(SolveMode::locally_symmetric);
  CHECK(weak <= rec + 1e-10);
  CHECK(weak <= pseudo + 1e-10);
  CHECK(rec <= ls + 1e-10);
  CHECK(pseudo <= ls + 1e-10);
  CHECK(ls > 0.1);  // random data is far from any of the classes
}

TEST_CASE("residual is invariant under joint rescaling of both tensors") {
  const int m = 3;
  SplitMix64 rng(303);
  SquareMat<double> g = random_spd(m, rng);
  SquareMat<double> g_inv = inverse(g);
  Ten4<double> rm = random_ten4(m, rng);
  Ten5<double> nrm = random_ten5(m, rng);
  WeakSymSolution s = solve_pointwise(g, g_inv, rm, nrm, SolveMode::weak);

  Ten4<double> rm2 = rm;
  Ten5<double> nrm2 = nrm;
  for (auto& v : rm2.data()) v *= 3.7;
  for (auto& v : nrm2.data()) v *= 3.7;
  WeakSymSolution t = solve_pointwise(g, g_inv, rm2, nrm2, SolveMode::weak);
  CHECK(t.residual == doctest::Approx(s.residual).epsilon(1e-10));
}

TEST_CASE("residual is invariant under orthogonal change of frame with g = I") {
  // Rotating every tensor index by Q maps the row space and the unknown space
  // orthogonally, so the normalized least-squares residual cannot move.
  const int m = 3;
  SplitMix64 rng(404);
  Ten4<double> rm = random_ten4(m, rng);
  Ten5<double> nrm = random_ten5(m, rng);
  SquareMat<double> g = identity(m);

  const double c1 = std::cos(0.7), s1 = std::sin(0.7);
  const double c2 = std::cos(1.2), s2 = std::sin(1.2);
  SquareMat<double> rz = identity(m), rx = identity(m);
  rz(0, 0) = c1; rz(0, 1) = -s1; rz(1, 0) = s1; rz(1, 1) = c1;
  rx(1, 1) = c2; rx(1, 2) = -s2; rx(2, 1) = s2; rx(2, 2) = c2;
  SquareMat<double> q = mat_mul(rz, rx);

  Ten4<double> rmq(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          double acc = 0.0;
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
              for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                  acc += q(a, i) * q(b, j) * q(c, k) * q(d, l) * rm(i, j, k, l);
          rmq(a, b, c, d) = acc;
        }
  Ten5<double> nrmq(m);
  for (int w = 0; w < m; ++w)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) {
            double acc = 0.0;
            for (int v = 0; v < m; ++v)
              for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                  for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l)
                      acc += q(w, v) * q(a, i) * q(b, j) * q(c, k) * q(d, l) * nrm(v, i, j, k, l);
            nrmq(w, a, b, c, d) = acc;
          }

  for (auto mode : {SolveMode::weak, SolveMode::recurrent, SolveMode::locally_symmetric}) {
    double before = solve_pointwise(g, g, rm, nrm, mode).residual;
    double after = solve_pointwise(g, g, rmq, nrmq, mode).residual;
    CHECK(after == doctest::Approx(before).epsilon(1e-10));
  }
}

TEST_CASE("large dimension falls back to a subsampled row set") {
  const int m = 10;  // m^5 = 100000 rows; the solver samples 32768 of them
  SplitMix64 rng(505);
  SquareMat<double> g = identity(m);
  Ten4<double> rm = random_ten4(m, rng);
  Vec<double> a1(static_cast<std::size_t>(m)), a2(static_cast<std::size_t>(m));
  for (auto& v : a1) v = rng.next_uniform(-1.0, 1.0);
  for (auto& v : a2) v = rng.next_uniform(-1.0, 1.0);
  Ten5<double> nrm = build_nrm(g, g, rm, a1, a2);
  WeakSymSolution s = solve_pointwise(g, g, rm, nrm, SolveMode::weak);
  CHECK(s.approximate);
  // The planted identity holds on every row, sampled or not.
  CHECK(s.residual <= 1e-8);
  for (int i = 0; i < m; ++i)
    CHECK(s.alpha1[static_cast<std::size_t>(i)] ==
          doctest::Approx(a1[static_cast<std::size_t>(i)]).epsilon(1e-6));
}

TEST_CASE("flat bundle classifies as weakly symmetric with exact zeros") {
  CatalogEntry e = make("euclidean");
  auto pts = sample_tangent_points(e.sampling_box, 4, 42);
  BundleClassification c =
      classify_bundle(e.metric, GNaturalParams::sasaki(), pts, DiffConfig{}, SolveMode::weak);
  CHECK(c.verdict == Verdict::flat_and_weakly_symmetric);
  CHECK(c.sup_riemann == 0.0);
  CHECK(c.max_residual == 0.0);
  for (const auto& pc : c.per_point) CHECK(pc.solution.residual == 0.0);
}

TEST_CASE("sphere bundle is obstructed, with frozen residual extremes") {
  CatalogEntry e = make("sphere_polar");
  auto pts = sample_tangent_points(e.sampling_box, 5, 42, /*unit_fiber=*/true);
  BundleClassification c =
      classify_bundle(e.metric, GNaturalParams::sasaki(), pts, DiffConfig{}, SolveMode::weak);
  CHECK(c.verdict == Verdict::obstructed);
  CHECK(c.max_residual == doctest::Approx(0.99410178025023566).epsilon(1e-9));
  double min_res = 1e300;
  for (const auto& pc : c.per_point) min_res = std::min(min_res, pc.solution.residual);
  CHECK(min_res == doctest::Approx(0.96229442858091341).epsilon(1e-9));
  // Far above the rejection threshold at every sampled point.
  CHECK(min_res > 0.01);
}

TEST_CASE("dimension-2 bases carry a hypothesis warning") {
  CatalogEntry e = make("sphere_polar", {{"n", 2}});
  auto pts = sample_tangent_points(e.sampling_box, 2, 42, true);
  BundleClassification c =
      classify_bundle(e.metric, GNaturalParams::sasaki(), pts, DiffConfig{}, SolveMode::weak);
  CHECK_FALSE(c.warnings.empty());
}

TEST_CASE("base-manifold classification: model spaces solve their classes") {
  // The round sphere is locally symmetric as a base manifold; its residual in
  // that most-restrictive mode is numerically zero.
  CatalogEntry s = make("sphere_polar");
  auto xs = sample_points(s, 3, 42);
  BaseClassification bc =
      classify_base(s.metric, xs, DiffConfig{}, SolveMode::locally_symmetric);
  CHECK(bc.max_residual <= 1e-6);
  CHECK(bc.verdict != Verdict::obstructed);

  // A flat base is weakly symmetric outright.
  CatalogEntry e = make("euclidean");
  BaseClassification fc = classify_base(e.metric, sample_points(e, 3, 42), DiffConfig{},
                                        SolveMode::weak);
  CHECK(fc.verdict == Verdict::flat_and_weakly_symmetric);
  CHECK(fc.max_residual == 0.0);
}

TEST_CASE("classification requires at least one point") {
  CatalogEntry e = make("euclidean");
  CHECK_THROWS_AS(classify_bundle(e.metric, GNaturalParams::sasaki(), {}, DiffConfig{},
                                  SolveMode::weak),
                  ParamError);
  CHECK_THROWS_AS(classify_base(e.metric, {}, DiffConfig{}, SolveMode::weak), ParamError);
}
