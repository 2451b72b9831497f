// The g-natural lift: parameter validation, adapted frame, lifted metric,
// connection (torsion-freeness and metricity as exact identities), and the
// closed-form curvature term table.
#include <doctest.h>

#include <cmath>

#include "tbgeo/catalog.hpp"
#include "tbgeo/errors.hpp"
#include "tbgeo/geometry.hpp"
#include "tbgeo/lift.hpp"
#include "tbgeo/rng.hpp"

using namespace tbgeo;

namespace {

// R(U, V)W from the cached curvature tensor.
Vec<double> rm_op(const CurvatureBundle& b, const Vec<double>& u, const Vec<double>& v,
                  const Vec<double>& w) {
  const int n = b.g.dim();
  Vec<double> out(static_cast<std::size_t>(n), 0.0);
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          s += b.riemann(l, i, j, k) * u[static_cast<std::size_t>(i)] *
               v[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(l)] = s;
  }
  return out;
}

double g_inner(const CurvatureBundle& b, const Vec<double>& u, const Vec<double>& v) {
  const int n = b.g.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s += b.g(i, j) * u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
  return s;
}

struct Setting {
  CatalogEntry entry;
  CurvatureBundle bundle;
  TangentPoint p;
};

Setting sphere_setting(const GNaturalParams&) {
  Setting s{make("sphere_polar"), {}, {{1.1, 0.8, 2.0}, {0.3, -0.2, 0.5}}};
  s.bundle = curvature_bundle(s.entry.metric, s.p.x);
  return s;
}

Vec<double> gauss_vec(SplitMix64& rng, int n) {
  Vec<double> v(static_cast<std::size_t>(n));
  for (auto& c : v) c = rng.next_gauss();
  return v;
}

}  // namespace

TEST_CASE("parameter presets and the Riemannian condition") {
  GNaturalParams s = GNaturalParams::sasaki();
  CHECK(s.a == 1.0);
  CHECK(s.b == 0.0);
  CHECK(s.c == 0.0);
  CHECK(s.alpha == 1.0);
  CHECK(GNaturalParams::mixed().alpha == 1.0);
  GNaturalParams k = GNaturalParams::skew();
  CHECK(k.a == 2.0);
  CHECK(k.b == -1.0);
  CHECK(k.c == 1.0);
  CHECK(k.alpha == 5.0);

  CHECK(GNaturalParams::preset("skew").alpha == 5.0);
  CHECK_THROWS_AS(GNaturalParams::preset("cheeger"), UnknownEntryError);

  // a(a+c) - b^2 <= 0 or a <= 0 is rejected with the inequality spelled out.
  CHECK_THROWS_AS(GNaturalParams(1.0, 2.0, 0.0), ParamError);
  CHECK_THROWS_AS(GNaturalParams(-1.0, 0.0, -2.0), ParamError);
  CHECK_THROWS_WITH_AS(GNaturalParams(1.0, 2.0, 0.0),
                       doctest::Contains("Riemannian if and only if"), ParamError);
  CHECK_NOTHROW(GNaturalParams(0.5, -0.3, 0.1));
}

TEST_CASE("adapted frame inverts in closed form and round-trips vectors") {
  Setting s = sphere_setting(GNaturalParams::sasaki());
  LiftedFrame f = adapted_frame(s.bundle, s.p);
  auto prod = mat_mul(f.basis, f.inverse_basis);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));

  SplitMix64 rng(99);
  for (int trial = 0; trial < 4; ++trial) {
    SplitVector v{gauss_vec(rng, 3), gauss_vec(rng, 3)};
    SplitVector back = to_adapted(f, to_coordinates(f, v));
    for (int i = 0; i < 3; ++i) {
      CHECK(back.h[static_cast<std::size_t>(i)] ==
            doctest::Approx(v.h[static_cast<std::size_t>(i)]).epsilon(1e-12));
      CHECK(back.v[static_cast<std::size_t>(i)] ==
            doctest::Approx(v.v[static_cast<std::size_t>(i)]).epsilon(1e-12));
    }
  }

  // Horizontal lift of X has coordinate fiber components -K X; vertical lift
  // is fiber-only.
  Vec<double> X{1.0, 0.0, 0.0};
  auto xh = to_coordinates(f, SplitVector::horizontal(X));
  CHECK(xh[0] == 1.0);
  CHECK(xh[1] == 0.0);
  CHECK(xh[2] == 0.0);
  auto xv = to_coordinates(f, SplitVector::vertical(X));
  CHECK(xv[0] == 0.0);
  CHECK(xv[3] == 1.0);
  CHECK(xv[4] == 0.0);
}

TEST_CASE("lifted metric has the block form in the adapted frame") {
  GNaturalParams p(2.0, -1.0, 1.0);
  Setting s = sphere_setting(p);
  auto G = lifted_metric_adapted(p, s.bundle);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(G(i, j) == doctest::Approx((p.a + p.c) * s.bundle.g(i, j)).epsilon(1e-15));
      CHECK(G(i, 3 + j) == doctest::Approx(p.b * s.bundle.g(i, j)).epsilon(1e-15));
      CHECK(G(3 + i, j) == doctest::Approx(p.b * s.bundle.g(i, j)).epsilon(1e-15));
      CHECK(G(3 + i, 3 + j) == doctest::Approx(p.a * s.bundle.g(i, j)).epsilon(1e-15));
    }

  // Sasaki: horizontal and vertical distributions exactly orthogonal.
  auto Gs = lifted_metric_adapted(GNaturalParams::sasaki(), s.bundle);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(Gs(i, 3 + j) == 0.0);
}

TEST_CASE("lifted inner product reproduces the defining relations") {
  // G(X^h, Y^h) = (a+c) g(X,Y), G(X^h, Y^v) = b g(X,Y), G(X^v, Y^v) = a g(X,Y).
  GNaturalParams p(1.5, 0.7, -0.2);
  Setting s = sphere_setting(p);
  SplitMix64 rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    Vec<double> X = gauss_vec(rng, 3), Y = gauss_vec(rng, 3);
    double gxy = g_inner(s.bundle, X, Y);
    CHECK(lifted_inner(p, s.bundle, SplitVector::horizontal(X), SplitVector::horizontal(Y)) ==
          doctest::Approx((p.a + p.c) * gxy).epsilon(1e-13));
    CHECK(lifted_inner(p, s.bundle, SplitVector::horizontal(X), SplitVector::vertical(Y)) ==
          doctest::Approx(p.b * gxy).epsilon(1e-13));
    CHECK(lifted_inner(p, s.bundle, SplitVector::vertical(X), SplitVector::vertical(Y)) ==
          doctest::Approx(p.a * gxy).epsilon(1e-13));
  }
}

TEST_CASE("lifted metric in coordinates: frame conjugation and frozen values") {
  GNaturalParams p(2.0, -1.0, 1.0);
  Setting s = sphere_setting(p);
  LiftedFrame f = adapted_frame(s.bundle, s.p);
  auto G_ad = lifted_metric_adapted(p, s.bundle);
  auto G_co = lifted_metric_coords(p, s.bundle, s.p);
  // G_coords = inverse_basis^T G_adapted inverse_basis, checked entrywise.
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l) acc += f.inverse_basis(k, i) * G_ad(k, l) * f.inverse_basis(l, j);
      CHECK(G_co(i, j) == doctest::Approx(acc).epsilon(1e-12));
    }

  // The scalar-generic assembly must agree with the cached-frame one; it is
  // the function the bundle oracle differentiates.
  Vec<double> xy{s.p.x[0], s.p.x[1], s.p.x[2], s.p.y[0], s.p.y[1], s.p.y[2]};
  auto G_t = lifted_metric_coords_t<double>(s.entry.metric, p, xy, {});
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(G_t(i, j) == doctest::Approx(G_co(i, j)).epsilon(1e-13));

  // Frozen from a dual-mode evaluation on the 2-sphere (x = (0.9, 1.3),
  // y = (0.4, -0.7), Sasaki): regression anchor for the whole G assembly.
  CatalogEntry s2 = make("sphere_polar", {{"n", 2}});
  TangentPoint tp{{0.9, 1.3}, {0.4, -0.7}};
  auto b2 = curvature_bundle(s2.metric, tp.x);
  auto G2 = lifted_metric_coords(GNaturalParams::sasaki(), b2, tp);
  const double want[16] = {
      1.1893354868001937,   -0.1081917067429678,  0.0,                 -0.3408466708073683,
      -0.10819170674296781, 0.79160133277156308,  0.3408466708073683,  0.19476952617563903,
      0.0,                  0.3408466708073683,   1.0,                 0.0,
      -0.3408466708073683,  0.19476952617563903,  0.0,                 0.61360104734654353};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(G2(i, j) == doctest::Approx(want[4 * i + j]).epsilon(1e-12));
}

TEST_CASE("spray and Liouville lifts of the fiber point") {
  TangentPoint p{{1.0, 2.0, 0.5}, {0.1, -0.2, 0.3}};
  SplitVector th = spray(p);
  SplitVector tv = liouville(p);
  CHECK(th.h == p.y);
  CHECK(th.v == Vec<double>{0.0, 0.0, 0.0});
  CHECK(tv.h == Vec<double>{0.0, 0.0, 0.0});
  CHECK(tv.v == p.y);
}

TEST_CASE("lifted connection is torsion-free") {
  // For constant-coefficient base fields, [X^h, Y^h] = -(R(X,Y)t)^v and
  // [X^v, Y^v] = 0, so torsion-freeness pins the antisymmetric parts:
  //   nabla_{X^h}Y^h - nabla_{Y^h}X^h = -(R(X,Y)t)^v,
  //   nabla_{X^v}Y^v = 0 identically.
  for (auto p : {GNaturalParams::sasaki(), GNaturalParams::mixed(), GNaturalParams::skew()}) {
    Setting s = sphere_setting(p);
    SplitMix64 rng(21);
    for (int trial = 0; trial < 3; ++trial) {
      Vec<double> X = gauss_vec(rng, 3), Y = gauss_vec(rng, 3);
      LiftedField Xh{LiftedField::Kind::horizontal, X};
      LiftedField Yh{LiftedField::Kind::horizontal, Y};
      auto dxy = lifted_connection(p, s.bundle, s.p, SplitVector::horizontal(X), Yh);
      auto dyx = lifted_connection(p, s.bundle, s.p, SplitVector::horizontal(Y), Xh);
      Vec<double> rxyt = rm_op(s.bundle, X, Y, s.p.y);
      for (int i = 0; i < 3; ++i) {
        auto k = static_cast<std::size_t>(i);
        CHECK(dxy.h[k] - dyx.h[k] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(dxy.v[k] - dyx.v[k] == doctest::Approx(-rxyt[k]).epsilon(1e-11));
      }

      LiftedField Yv{LiftedField::Kind::vertical, Y};
      auto dvv = lifted_connection(p, s.bundle, s.p, SplitVector::vertical(X), Yv);
      for (double c : dvv.h) CHECK(c == 0.0);
      for (double c : dvv.v) CHECK(c == 0.0);
    }
  }
}

TEST_CASE("lifted connection is metric for G") {
  // Directional derivative of G(V~, W~) along U~ equals
  // G(nabla_U V~, W~) + G(V~, nabla_U W~).  In the adapted frame the inner
  // products of lifts are (a+c) g(V,W), b g(V,W), a g(V,W), whose horizontal
  // derivative is the corresponding multiple of (partial_X g)(V,W) and whose
  // vertical derivative vanishes -- so metricity is checkable exactly.
  for (auto p : {GNaturalParams::mixed(), GNaturalParams::skew()}) {
    Setting s = sphere_setting(p);
    Ten3<double> dg = metric_grad<double>(s.entry.metric, s.p.x, DiffConfig{});
    SplitMix64 rng(31);
    Vec<double> X = gauss_vec(rng, 3), V = gauss_vec(rng, 3), W = gauss_vec(rng, 3);
    auto dxg = [&](const Vec<double>& u, const Vec<double>& v) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            acc += X[static_cast<std::size_t>(k)] * dg(k, i, j) * u[static_cast<std::size_t>(i)] *
                   v[static_cast<std::size_t>(j)];
      return acc;
    };

    auto check_pair = [&](LiftedField::Kind vk, LiftedField::Kind wk, SplitVector dir,
                          double lhs) {
      SplitVector vvec = vk == LiftedField::Kind::horizontal ? SplitVector::horizontal(V)
                                                             : SplitVector::vertical(V);
      SplitVector wvec = wk == LiftedField::Kind::horizontal ? SplitVector::horizontal(W)
                                                             : SplitVector::vertical(W);
      auto dv = lifted_connection(p, s.bundle, s.p, dir, LiftedField{vk, V});
      auto dw = lifted_connection(p, s.bundle, s.p, dir, LiftedField{wk, W});
      double rhs = lifted_inner(p, s.bundle, dv, wvec) + lifted_inner(p, s.bundle, vvec, dw);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    };

    SplitVector xh = SplitVector::horizontal(X);
    SplitVector xv = SplitVector::vertical(X);
    using K = LiftedField::Kind;
    // Horizontal direction: X^h . G(V~, W~) = multiple of (partial_X g)(V, W).
    check_pair(K::horizontal, K::horizontal, xh, (p.a + p.c) * dxg(V, W));
    check_pair(K::horizontal, K::vertical, xh, p.b * dxg(V, W));
    check_pair(K::vertical, K::vertical, xh, p.a * dxg(V, W));
    // Vertical direction: the same inner products do not depend on the fiber.
    check_pair(K::horizontal, K::horizontal, xv, 0.0);
    check_pair(K::horizontal, K::vertical, xv, 0.0);
    check_pair(K::vertical, K::vertical, xv, 0.0);
  }
}

TEST_CASE("curvature term table structure") {
  // vvv is identically zero; the other five cases carry terms.
  CHECK(curvature_terms(LiftCase::vvv).empty());
  for (LiftCase c : {LiftCase::vvh, LiftCase::hvv, LiftCase::hhv, LiftCase::hhh, LiftCase::hvh})
    CHECK_FALSE(curvature_terms(c).empty());

  // Exactly one term in the whole table is under adjudication: the
  // horizontal quadratic of R(X^v,Y^v)Z^h, transcribed a^2/4alpha^2 vs
  // adjudicated a^4/4alpha^2.  They coincide whenever a = 1.
  const CurvatureTerm* disputed = nullptr;
  int count = 0;
  for (LiftCase c : {LiftCase::vvv, LiftCase::vvh, LiftCase::hvv, LiftCase::hhv, LiftCase::hhh,
                     LiftCase::hvh})
    for (const auto& t : curvature_terms(c))
      if (t.adjudication_differs) {
        ++count;
        disputed = &t;
      }
  REQUIRE(count == 1);
  CHECK(disputed->case_id == LiftCase::vvh);
  CHECK(disputed->part == 'h');
  GNaturalParams skew = GNaturalParams::skew();
  CHECK(disputed->coef_transcribed(skew) == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(disputed->coef_adjudicated(skew) == doctest::Approx(0.16).epsilon(1e-15));
  GNaturalParams sasaki = GNaturalParams::sasaki();
  CHECK(disputed->coef_transcribed(sasaki) == disputed->coef_adjudicated(sasaki));
}

TEST_CASE("Sasaki specialization zeroes every b-carrying coefficient exactly") {
  GNaturalParams sasaki = GNaturalParams::sasaki();
  for (LiftCase c : {LiftCase::vvh, LiftCase::hvv, LiftCase::hhv, LiftCase::hhh, LiftCase::hvh})
    for (const auto& t : curvature_terms(c))
      if (t.carries_b) {
        CHECK(t.coef_transcribed(sasaki) == 0.0);
        CHECK(t.coef_adjudicated(sasaki) == 0.0);
      }

  // A and D are pure b-terms: identically zero tensors for the Sasaki lift.
  Setting s = sphere_setting(sasaki);
  SplitMix64 rng(5);
  Vec<double> X = gauss_vec(rng, 3), Y = gauss_vec(rng, 3);
  ConnectionTensors t = abcd(sasaki, s.bundle, s.p, X, Y);
  for (double v : t.A) CHECK(v == 0.0);
  for (double v : t.D) CHECK(v == 0.0);
}

TEST_CASE("closed-form curvature is antisymmetric in its first two arguments") {
  GNaturalParams p = GNaturalParams::skew();
  Setting s = sphere_setting(p);
  SplitMix64 rng(13);
  for (int trial = 0; trial < 3; ++trial) {
    SplitVector U{gauss_vec(rng, 3), gauss_vec(rng, 3)};
    SplitVector V{gauss_vec(rng, 3), gauss_vec(rng, 3)};
    SplitVector W{gauss_vec(rng, 3), gauss_vec(rng, 3)};
    auto ruv = lifted_curvature_closed(p, s.bundle, s.p, U, V, W);
    auto rvu = lifted_curvature_closed(p, s.bundle, s.p, V, U, W);
    for (int i = 0; i < 3; ++i) {
      auto k = static_cast<std::size_t>(i);
      CHECK(ruv.h[k] == doctest::Approx(-rvu.h[k]).epsilon(1e-11));
      CHECK(ruv.v[k] == doctest::Approx(-rvu.v[k]).epsilon(1e-11));
    }
  }

  // R~(X^v, Y^v)Z^v vanishes identically.
  SplitMix64 rng2(17);
  auto z = evaluate_case(p, s.bundle, s.p.y, LiftCase::vvv, gauss_vec(rng2, 3), gauss_vec(rng2, 3),
                         gauss_vec(rng2, 3), CoefficientTable::adjudicated);
  for (double c : z.h) CHECK(c == 0.0);
  for (double c : z.v) CHECK(c == 0.0);
}
