// catalog.cpp - the predefined manifold entries.
#include "tbgeo/catalog.hpp"

#include <cmath>

#include "tbgeo/errors.hpp"

namespace tbgeo {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int int_param(const std::map<std::string, double>& p, const std::string& key, int fallback,
              int lo, int hi = 1 << 20) {
  auto it = p.find(key);
  double v = it == p.end() ? fallback : it->second;
  if (v != std::floor(v))
    throw ParamError("parameter '" + key + "' must be an integer; got " + std::to_string(v));
  int n = static_cast<int>(v);
  if (n < lo || n > hi)
    throw ParamError("parameter '" + key + "' = " + std::to_string(n) + " out of range [" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return n;
}

double real_param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void reject_unknown_keys(const std::map<std::string, double>& p,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : p) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParamError("unknown manifold parameter '" + key + "'");
  }
}

CatalogEntry make_euclidean(const std::map<std::string, double>& p) {
  reject_unknown_keys(p, {"n"});
  int n = int_param(p, "n", 3, 2);
  CatalogEntry e;
  e.name = "euclidean";
  e.dim = n;
  e.params = {{"n", static_cast<double>(n)}};
  e.metric.name = "euclidean(n=" + std::to_string(n) + ")";
  e.metric.dim = n;
  e.metric.field = make_matrix_field<4>(n, [n](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::value_type;
    (void)x;
    return SquareMat<S>::identity(n);
  });
  e.sampling_box.assign(static_cast<std::size_t>(n), {-2.0, 2.0});
  e.known_flat = true;
  e.known_locally_symmetric = true;
  return e;
}

CatalogEntry make_flat_torus(const std::map<std::string, double>& p) {
  reject_unknown_keys(p, {"n"});
  int n = int_param(p, "n", 3, 2);
  CatalogEntry e;
  e.name = "flat_torus_chart";
  e.dim = n;
  e.params = {{"n", static_cast<double>(n)}};
  e.metric.name = "flat_torus_chart(n=" + std::to_string(n) + ")";
  e.metric.dim = n;
  e.metric.field = make_matrix_field<4>(n, [n](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::value_type;
    (void)x;
    return SquareMat<S>::identity(n);
  });
  // Same flat metric as euclidean, but on the fundamental-domain chart of a
  // torus: the bookkeeping (domain + box) is what distinguishes the entry.
  e.metric.domain = [](const Vec<double>& x) {
    for (double c : x)
      if (c < 0.0 || c >= kTwoPi) return false;
    return true;
  };
  e.sampling_box.assign(static_cast<std::size_t>(n), {0.2, kTwoPi - 0.2});
  e.known_flat = true;
  e.known_locally_symmetric = true;
  return e;
}

CatalogEntry make_sphere(const std::map<std::string, double>& p) {
  reject_unknown_keys(p, {"n", "r"});
  int n = int_param(p, "n", 3, 2, 3);
  double r = real_param(p, "r", 1.0);
  if (!(r > 0.0)) throw ParamError("sphere radius must be positive; got " + std::to_string(r));
  CatalogEntry e;
  e.name = "sphere_polar";
  e.dim = n;
  e.params = {{"n", static_cast<double>(n)}, {"r", r}};
  e.metric.name = "sphere_polar(n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")";
  e.metric.dim = n;
  // Round sphere of radius r in nested polar angles (x_0, ..., x_{n-1}):
  //   g = r^2 diag(1, sin^2 x_0, sin^2 x_0 sin^2 x_1, ...).
  e.metric.field = make_matrix_field<4>(n, [n, r](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::value_type;
    using std::sin;
    SquareMat<S> g(n);
    S acc = S(r * r);
    for (int i = 0; i < n; ++i) {
      g(i, i) = acc;
      if (i + 1 < n) {
        S si = sin(x[static_cast<std::size_t>(i)]);
        acc = acc * (si * si);
      }
    }
    return g;
  });
  // Polar angles live in (0, pi) (azimuthal angle in (0, 2*pi)); the metric is
  // singular at the poles, so the domain excludes them outright.
  e.metric.domain = [n](const Vec<double>& x) {
    constexpr double pi = 3.14159265358979323846;
    for (int i = 0; i + 1 < n; ++i)
      if (x[static_cast<std::size_t>(i)] <= 0.0 || x[static_cast<std::size_t>(i)] >= pi) return false;
    double az = x[static_cast<std::size_t>(n - 1)];
    return az > 0.0 && az < kTwoPi;
  };
  constexpr double pi = 3.14159265358979323846;
  e.sampling_box.assign(static_cast<std::size_t>(n), {0.3, pi - 0.3});
  e.known_flat = false;
  e.known_locally_symmetric = true;  // constant curvature 1/r^2
  return e;
}

CatalogEntry make_hyperbolic(const std::map<std::string, double>& p) {
  reject_unknown_keys(p, {"n"});
  int n = int_param(p, "n", 3, 2);
  CatalogEntry e;
  e.name = "hyperbolic_halfspace";
  e.dim = n;
  e.params = {{"n", static_cast<double>(n)}};
  e.metric.name = "hyperbolic_halfspace(n=" + std::to_string(n) + ")";
  e.metric.dim = n;
  // Upper half-space model: g_ij = delta_ij / (x_{n-1})^2, constant curvature -1.
  e.metric.field = make_matrix_field<4>(n, [n](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::value_type;
    SquareMat<S> g(n);
    S h = x[static_cast<std::size_t>(n - 1)];
    S w = 1.0 / (h * h);
    for (int i = 0; i < n; ++i) g(i, i) = w;
    return g;
  });
  e.metric.domain = [n](const Vec<double>& x) { return x[static_cast<std::size_t>(n - 1)] > 0.0; };
  e.sampling_box.assign(static_cast<std::size_t>(n), {-2.0, 2.0});
  e.sampling_box.back() = {0.5, 3.0};
  e.known_flat = false;
  e.known_locally_symmetric = true;  // constant curvature -1
  return e;
}

CatalogEntry make_perturbed_flat(const std::map<std::string, double>& p) {
  reject_unknown_keys(p, {"n", "eps", "seed"});
  int n = int_param(p, "n", 3, 2);
  double eps = real_param(p, "eps", 0.1);
  int seed = int_param(p, "seed", 7, 0, 1 << 30);
  if (eps < 0.0 || eps > 0.2)
    throw ParamError("perturbation eps must lie in [0, 0.2] (Gershgorin bound); got " +
                     std::to_string(eps));
  CatalogEntry e;
  e.name = "perturbed_flat";
  e.dim = n;
  e.params = {{"n", static_cast<double>(n)}, {"eps", eps}, {"seed", static_cast<double>(seed)}};
  e.metric.name = "perturbed_flat(n=" + std::to_string(n) + ", eps=" + std::to_string(eps) +
                  ", seed=" + std::to_string(seed) + ")";
  e.metric.dim = n;

  // g = delta + eps * S(x) with S_ij(x) = sin(k_ij . x + phi_ij) / n, k and phi
  // drawn once from the entry seed, symmetric in (i,j).  Every |S_ij| <= 1/n,
  // so each Gershgorin disc of eps*S has radius <= eps <= 0.2 < 1 and g stays
  // positive definite on the whole chart.
  std::vector<std::vector<double>> wave(static_cast<std::size_t>(n) * n,
                                        std::vector<double>(static_cast<std::size_t>(n)));
  std::vector<double> phase(static_cast<std::size_t>(n) * n);
  SplitMix64 mix(0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(seed));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<double> k(static_cast<std::size_t>(n));
      for (auto& kc : k) kc = static_cast<double>(mix.next_u64() % 3 + 1);
      double ph = mix.next_uniform(0.0, kTwoPi);
      wave[static_cast<std::size_t>(i) * n + j] = k;
      wave[static_cast<std::size_t>(j) * n + i] = k;
      phase[static_cast<std::size_t>(i) * n + j] = ph;
      phase[static_cast<std::size_t>(j) * n + i] = ph;
    }

  e.metric.field = make_matrix_field<4>(n, [n, eps, wave, phase](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::value_type;
    using std::sin;
    SquareMat<S> g(n);
    for (int i = 0; i < n; ++i) {
      g(i, i) = S(1.0);
      for (int j = i; j < n; ++j) {
        const auto& k = wave[static_cast<std::size_t>(i) * n + j];
        S arg = S(phase[static_cast<std::size_t>(i) * n + j]);
        for (int c = 0; c < n; ++c) arg += k[static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
        S val = (eps / n) * sin(arg);
        g(i, j) += val;
        if (j != i) g(j, i) += val;
      }
    }
    return g;
  });
  e.sampling_box.assign(static_cast<std::size_t>(n), {-2.0, 2.0});
  e.known_flat = (eps == 0.0);
  e.known_locally_symmetric = (eps == 0.0);
  return e;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "euclidean", "flat_torus_chart", "sphere_polar", "hyperbolic_halfspace", "perturbed_flat"};
  return names;
}

CatalogEntry make(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "euclidean") return make_euclidean(params);
  if (name == "flat_torus_chart") return make_flat_torus(params);
  if (name == "sphere_polar") return make_sphere(params);
  if (name == "hyperbolic_halfspace") return make_hyperbolic(params);
  if (name == "perturbed_flat") return make_perturbed_flat(params);
  std::string known;
  for (const auto& k : catalog_names()) known += (known.empty() ? "" : ", ") + k;
  throw UnknownEntryError("unknown manifold '" + name + "' (known: " + known + ")");
}

std::vector<Vec<double>> sample_points(const CatalogEntry& e, int count, std::uint64_t seed) {
  if (count < 0) throw ParamError("sample count must be non-negative");
  std::vector<Vec<double>> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    SplitMix64 mix = SplitMix64::for_index(seed, static_cast<std::uint64_t>(k));
    Vec<double> x(static_cast<std::size_t>(e.dim));
    for (int i = 0; i < e.dim; ++i) {
      const auto& [lo, hi] = e.sampling_box[static_cast<std::size_t>(i)];
      x[static_cast<std::size_t>(i)] = mix.next_uniform(lo, hi);
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

}  // namespace tbgeo
