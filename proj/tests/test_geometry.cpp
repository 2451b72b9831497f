// Base-manifold differential geometry: Christoffel symbols, curvature, and
// covariant curvature derivative against closed-form values on constant-
// curvature spaces, the structural-identity suite, metric validation, and a
// frozen regression tensor on the generically curved catalog entry.
#include <doctest.h>

#include <cmath>

#include "tbgeo/catalog.hpp"
#include "tbgeo/errors.hpp"
#include "tbgeo/geometry.hpp"

using namespace tbgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;

MetricSpec metric_of(const char* name, const std::map<std::string, double>& params = {}) {
  return make(name, params).metric;
}

}  // namespace

TEST_CASE("round sphere Christoffel symbols match the closed form") {
  // g = r^2 diag(1, sin^2 theta) in polar coordinates (theta, phi):
  //   Gamma^theta_{phi phi} = -sin theta cos theta,  Gamma^phi_{theta phi} = cot theta,
  // independent of r.  At theta = pi/4 these are -1/2 and 1.
  MetricSpec s2 = metric_of("sphere_polar", {{"n", 2}});
  auto gamma = christoffel(s2, {kPi / 4.0, 1.0});
  CHECK(gamma(0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(gamma(1, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gamma(1, 1, 0) == doctest::Approx(1.0).epsilon(1e-12));  // symmetry
  CHECK(gamma(0, 0, 0) == doctest::Approx(0.0).epsilon(1e-14));

  // The radius scales the metric but not the connection.
  MetricSpec s2r = metric_of("sphere_polar", {{"n", 2}, {"r", 1.7}});
  auto gamma_r = christoffel(s2r, {kPi / 4.0, 1.0});
  CHECK(gamma_r(0, 1, 1) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("hyperbolic half-space Christoffel symbols match the closed form") {
  // g = delta / w^2 with w the last coordinate:
  //   Gamma^i_{iw} = -1/w, Gamma^w_{ii} = 1/w (i != w), Gamma^w_{ww} = -1/w.
  MetricSpec h3 = metric_of("hyperbolic_halfspace");
  auto gamma = christoffel(h3, {0.3, -1.2, 2.0});
  CHECK(gamma(0, 0, 2) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(gamma(1, 1, 2) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(gamma(2, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gamma(2, 2, 2) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(gamma(0, 0, 1) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("constant-curvature sectional values") {
  // K = 1/r^2 on the sphere, K = -1 on hyperbolic space, every 2-plane.
  for (double r : {1.0, 1.7}) {
    CatalogEntry e = make("sphere_polar", {{"n", 3}, {"r", r}});
    for (const auto& x : sample_points(e, 4, 11)) {
      auto b = curvature_bundle(e.metric, x);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (i != j)
            CHECK(sectional_curvature(b, i, j) == doctest::Approx(1.0 / (r * r)).epsilon(1e-10));
    }
  }
  CatalogEntry h = make("hyperbolic_halfspace");
  for (const auto& x : sample_points(h, 4, 12)) {
    auto b = curvature_bundle(h.metric, x);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(sectional_curvature(b, i, j) == doctest::Approx(-1.0).epsilon(1e-10));
  }
}

TEST_CASE("flat entries have identically vanishing curvature") {
  for (const char* name : {"euclidean", "flat_torus_chart"}) {
    CatalogEntry e = make(name);
    for (const auto& x : sample_points(e, 3, 5)) {
      auto rm = riemann(e.metric, x);
      CHECK(sup_norm(rm) == 0.0);  // constant metrics: exactly zero
    }
  }
  CatalogEntry p0 = make("perturbed_flat", {{"eps", 0.0}});
  for (const auto& x : sample_points(p0, 3, 5)) {
    CHECK(sup_norm(riemann(p0.metric, x)) == 0.0);
  }
}

TEST_CASE("locally symmetric spaces have vanishing nabla R") {
  for (const char* name : {"sphere_polar", "hyperbolic_halfspace"}) {
    CatalogEntry e = make(name);
    for (const auto& x : sample_points(e, 3, 17)) {
      auto nr = nabla_riemann(e.metric, x);
      CHECK(sup_norm(nr) <= 1e-10);
    }
  }
}

TEST_CASE("structural identities hold at dual-mode precision") {
  for (const char* name :
       {"euclidean", "flat_torus_chart", "sphere_polar", "hyperbolic_halfspace", "perturbed_flat"}) {
    CatalogEntry e = make(name);
    for (const auto& x : sample_points(e, 5, 23)) {
      auto b = curvature_bundle(e.metric, x);
      auto inv = check_invariants(e.metric, b);
      CAPTURE(name);
      CHECK(inv.max_violation() <= 1e-8);
    }
  }
}

TEST_CASE("structural identities hold in finite-difference mode") {
  DiffConfig fd;
  fd.mode = DiffMode::finite_difference;
  for (const char* name : {"sphere_polar", "hyperbolic_halfspace", "perturbed_flat"}) {
    CatalogEntry e = make(name);
    for (const auto& x : sample_points(e, 3, 29)) {
      auto b = curvature_bundle(e.metric, x, fd);
      auto inv = check_invariants(e.metric, b, fd);
      CAPTURE(name);
      CHECK(inv.max_violation() <= 1e-5);
    }
  }
}

TEST_CASE("finite-difference tensors track dual-mode tensors") {
  DiffConfig fd;
  fd.mode = DiffMode::finite_difference;
  fd.fd_step = 1e-3;
  fd.fd_order = 6;
  CatalogEntry e = make("sphere_polar");
  auto x = sample_points(e, 1, 31)[0];
  auto gd = christoffel(e.metric, x);
  auto gf = christoffel(e.metric, x, fd);
  auto rd = riemann(e.metric, x);
  auto rf = riemann(e.metric, x, fd);
  double dg = 0.0, dr = 0.0;
  for (std::size_t k = 0; k < gd.data().size(); ++k)
    dg = std::max(dg, std::abs(gd.data()[k] - gf.data()[k]));
  for (std::size_t k = 0; k < rd.data().size(); ++k)
    dr = std::max(dr, std::abs(rd.data()[k] - rf.data()[k]));
  CHECK(dg <= 1e-9);
  CHECK(dr <= 1e-7);
}

TEST_CASE("curvature derivative regression on the generically curved entry") {
  // Values frozen from a dual-mode evaluation; the entry point is the first
  // seed-42 sample, so any change in sampling, the metric construction, or
  // the derivative kernels shows up here.
  CatalogEntry e = make("perturbed_flat", {{"eps", 0.1}, {"seed", 7}});
  auto pts = sample_points(e, 3, 42);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0][0] == doctest::Approx(-1.0749994886265934).epsilon(1e-14));
  CHECK(pts[0][1] == doctest::Approx(-0.85815411278303211).epsilon(1e-14));
  CHECK(pts[0][2] == doctest::Approx(-1.9824540864667375).epsilon(1e-14));

  auto b = curvature_bundle(e.metric, pts[0]);
  CHECK(b.riemann(0, 0, 1, 1) == doctest::Approx(0.41042017130289016).epsilon(1e-12));
  CHECK(sup_norm(b.riemann) == doctest::Approx(0.42330010155828041).epsilon(1e-12));
  CHECK(b.nabla_riemann(0, 0, 0, 1, 2) == doctest::Approx(0.41700454259051195).epsilon(1e-12));
  CHECK(b.nabla_riemann(1, 2, 0, 1, 0) == doctest::Approx(-0.55124362741165689).epsilon(1e-12));

  // Cross-engine agreement on the same third-derivative-level tensor.
  DiffConfig fd;
  fd.mode = DiffMode::finite_difference;
  fd.fd_step = 1e-3;
  fd.fd_order = 6;
  auto nf = nabla_riemann(e.metric, pts[0], fd);
  CHECK(nf(0, 0, 0, 1, 2) == doctest::Approx(0.41700454259051195).epsilon(1e-5));
}

TEST_CASE("metric validation rejects malformed inputs") {
  SUBCASE("asymmetric matrix field") {
    MetricSpec m;
    m.name = "asym";
    m.dim = 2;
    m.field = make_matrix_field(2, [](const auto& x) {
      using S = std::decay_t<decltype(x[0])>;
      SquareMat<S> g(2);
      g(0, 0) = S(1.0);
      g(1, 1) = S(1.0);
      g(0, 1) = S(0.25);
      g(1, 0) = S(0.0);
      return g;
    });
    CHECK_THROWS_AS(metric_value(m, {0.0, 0.0}), ParamError);
  }
  SUBCASE("indefinite matrix field") {
    MetricSpec m;
    m.name = "lorentzian";
    m.dim = 2;
    m.field = make_matrix_field(2, [](const auto& x) {
      using S = std::decay_t<decltype(x[0])>;
      SquareMat<S> g(2);
      g(0, 0) = S(1.0);
      g(1, 1) = S(-1.0);
      return g;
    });
    CHECK_THROWS_AS(metric_value(m, {0.0, 0.0}), SingularMetricError);
  }
  SUBCASE("condition number beyond the ceiling") {
    MetricSpec m;
    m.name = "near-singular";
    m.dim = 2;
    m.field = make_matrix_field(2, [](const auto& x) {
      using S = std::decay_t<decltype(x[0])>;
      SquareMat<S> g(2);
      g(0, 0) = S(1.0);
      g(1, 1) = S(1e-13);
      return g;
    });
    CHECK_THROWS_AS(metric_value(m, {0.0, 0.0}), SingularMetricError);
  }
  SUBCASE("dimension and domain checks") {
    MetricSpec s2 = metric_of("sphere_polar", {{"n", 2}});
    CHECK_THROWS_AS(metric_value(s2, {0.5}), DimensionMismatchError);
    CHECK_THROWS_AS(metric_value(s2, {-0.1, 1.0}), DomainError);  // theta outside (0, pi)
  }
}

TEST_CASE("euclidean metric is the identity exactly") {
  MetricSpec e = metric_of("euclidean");
  auto g = metric_value(e, {0.7, -1.1, 0.2});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(g(i, j) == (i == j ? 1.0 : 0.0));
}
