// report.hpp - experiment drivers behind the command-line interface.
//
// Each run_* function resolves a RunConfig, executes the experiment, and
// returns the structured report (ordered JSON, so serialization order -- and
// therefore the emitted bytes -- is fixed), a rendered form ready to write to
// the output target, and the process exit code.  tools/main.cpp is a thin
// flag parser on top, which keeps every command testable in-process.
//
// The embedded config block contains exactly the fields that determine the
// numbers: manifold + params, (a, b, c), points, seed, differentiation
// settings, tolerances, and (for weaksym) mode and space.  Execution details
// that cannot change a result -- jobs, output target, text vs json -- are
// deliberately excluded, which makes reports byte-identical across jobs
// counts, not merely across repeats.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "tbgeo/calculus.hpp"
#include "tbgeo/weaksym.hpp"

namespace tbgeo {

inline constexpr const char* kReportSchemaVersion = "1.0";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 2;
inline constexpr int invariant_failure = 3;
inline constexpr int lift_mismatch = 4;
inline constexpr int verdict_mismatch = 5;
}  // namespace exit_code

// Fully resolved experiment configuration.  Defaults mirror the CLI defaults.
struct RunConfig {
  std::string manifold = "euclidean";
  std::map<std::string, double> mparams;

  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  std::string gnat_label = "sasaki";  // preset name, or "custom" for raw a,b,c

  int points = 20;
  std::uint64_t seed = 42;
  DiffConfig diff{};

  double agree_tol = 1e-6;
  double flat_tol = 1e-9;
  double reject_threshold = 0.01;

  SolveMode mode = SolveMode::weak;        // weaksym only
  std::string space = "tangent_bundle";    // weaksym only: base | tangent_bundle

  int jobs = 1;
};

struct CommandResult {
  nlohmann::ordered_json report;
  std::string rendered;  // what gets written to --output (or stdout)
  int exit_code = exit_code::ok;
};

// Base-manifold g, Gamma, R, nabla R at the sampled points plus the
// invariant suite; exit 3 when any structural identity is violated beyond
// the mode's achievable accuracy.
CommandResult run_curvature(const RunConfig& cfg, const std::string& format = "json");

// Closed-form lifted curvature vs the 2n-dimensional brute-force oracle,
// per case; exit 4 when any case misses agree_tol, with the discrepancy
// ledger (fitted coefficients) still emitted.
CommandResult run_lift_check(const RunConfig& cfg, const std::string& format = "json");

// Weak-symmetry classification on the tangent bundle (or, informationally,
// on the base).  On the bundle the verdict is checked against the entry's
// known flatness; exit 5 on a mismatch with the flat-iff-weakly-symmetric
// equivalence.
CommandResult run_weaksym(const RunConfig& cfg, const std::string& format = "json");

}  // namespace tbgeo
