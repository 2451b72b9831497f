// catalog.hpp - predefined base manifolds with safe sampling boxes.
//
// Each entry bundles an analytic metric, the chart domain it is valid on, a
// per-coordinate sampling box kept strictly away from chart singularities,
// and ground-truth flags (flat? locally symmetric?) used by the experiment
// verdicts.  Entries are immutable after construction and safe to share
// across threads.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tbgeo/metric.hpp"
#include "tbgeo/rng.hpp"

namespace tbgeo {

struct CatalogEntry {
  std::string name;
  int dim = 0;
  std::map<std::string, double> params;  // echoed into reports
  MetricSpec metric;
  // Per-coordinate closed intervals, strictly inside the chart domain.
  std::vector<std::pair<double, double>> sampling_box;
  bool known_flat = false;
  bool known_locally_symmetric = false;
};

// Construct a catalog entry by name.  Recognized names and their parameters:
//   euclidean             n (>=2, default 3)
//   flat_torus_chart      n (>=2, default 3)        periodic box chart [0, 2*pi)^n
//   sphere_polar          n (2 or 3, default 3), r (>0, default 1)
//   hyperbolic_halfspace  n (>=2, default 3)        g_ij = delta_ij / x_n^2
//   perturbed_flat        n (>=2, default 3), eps ([0, 0.2], default 0.1), seed (default 7)
// Unknown names raise UnknownEntryError; out-of-range parameters ParamError.
CatalogEntry make(const std::string& name, const std::map<std::string, double>& params = {});

const std::vector<std::string>& catalog_names();

// Seeded uniform draw from the entry's sampling box.  Point k depends only on
// (seed, k), so parallel runs sample identically.
std::vector<Vec<double>> sample_points(const CatalogEntry& e, int count, std::uint64_t seed);

}  // namespace tbgeo
