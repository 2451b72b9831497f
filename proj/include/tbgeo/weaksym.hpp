// weaksym.hpp - pointwise weak-symmetry classification.
//
// The defining identity, written over all coordinate basis tuples
// (W,X,Y,Z) = (e_w,e_x,e_y,e_z) and free component l, is
//   nrm(w,l,x,y,z) = alpha1_w rm(l,x,y,z) + alpha2_x rm(l,w,y,z)
//                  + alpha2_y rm(l,x,w,z) + alpha2_z rm(l,x,y,w)
//                  + (rm(q,x,y,z) g_qw) (g^{lp} alpha2_p)
// -- a linear system in the covectors (alpha1, alpha2).  Solving it in least
// squares at a point yields a *necessary* condition: a residual bounded away
// from zero refutes weak symmetry there; zero residuals everywhere are only
// consistent-with (the property quantifies over smooth fields, which a
// pointwise solve cannot certify).  Restricted unknown sets give the nested
// special classes: recurrent (alpha2 = 0), pseudo-symmetric (alpha1 =
// 2 alpha2), locally symmetric (both zero).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tbgeo/calculus.hpp"
#include "tbgeo/lift.hpp"
#include "tbgeo/linalg.hpp"
#include "tbgeo/metric.hpp"

namespace tbgeo {

enum class SolveMode { weak, recurrent, pseudo, locally_symmetric };

const char* to_string(SolveMode m);
SolveMode solve_mode_from_string(const std::string& s);  // UnknownEntryError if invalid

struct WeakSymSolution {
  std::vector<double> alpha1;  // m components (zero in locally_symmetric mode)
  std::vector<double> alpha2;  // m components (zero in recurrent/locally_symmetric)
  double residual = 0.0;       // ||A u - rhs||_2 / max(||nrm||_2, ||rm||_2 * noise_floor, eps)
  double r_norm = 0.0;         // sup norm of rm
  double nr_norm = 0.0;        // sup norm of nrm
  SolveMode mode = SolveMode::weak;
  bool approximate = false;    // true when the row set was subsampled (m > 8)
};

inline constexpr double kResidualFloor = 1e-9;  // absolute eps in the residual denominator
inline constexpr double kNoiseFloor = 1e-6;     // ||nrm|| below this times ||rm|| counts as zero
inline constexpr int kFullSystemMaxDim = 8;     // m^5 rows assembled densely up to here
inline constexpr int kSubsampledRows = 32768;   // rows drawn (fixed seed) beyond that

// Least-squares solve of the identity above at one point.  When both tensors
// vanish below zero_floor the equation is trivially satisfied with free
// covectors; the solution is canonicalized to zero with residual 0.
WeakSymSolution solve_pointwise(const SquareMat<double>& g, const SquareMat<double>& g_inv,
                                const Ten4<double>& rm, const Ten5<double>& nrm, SolveMode mode,
                                double zero_floor = kResidualFloor);

bool is_flat(const Ten4<double>& rm, double tol);

// ---- bundle-level experiment ---------------------------------------------------

enum class Verdict { flat_and_weakly_symmetric, obstructed, inconclusive };

const char* to_string(Verdict v);

struct ClassifyThresholds {
  double flat_tol = 1e-9;         // sup ||R|| below this counts as flat
  double accept_tol = 1e-6;       // residuals below this count as satisfied
  double reject_threshold = 0.01; // residuals above this refute the property
};

struct PointClassification {
  TangentPoint p;
  WeakSymSolution solution;
  double sup_riemann = 0.0;  // sup norm of the bundle curvature at p
};

struct BundleClassification {
  SolveMode mode = SolveMode::weak;
  std::vector<PointClassification> per_point;
  double max_residual = 0.0;
  double sup_riemann = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> warnings;
};

// Classify (TM, G) over the sampled tangent points: brute-force curvature and
// covariant derivative on the 2n-dimensional bundle metric feed
// solve_pointwise per point (parallel across points, deterministic order).
// Verdict: FLAT_AND_WEAKLY_SYMMETRIC when every residual <= accept_tol and
// sup ||R~|| <= flat_tol; OBSTRUCTED when any residual >= reject_threshold;
// INCONCLUSIVE otherwise.
BundleClassification classify_bundle(const MetricSpec& base, const GNaturalParams& params,
                                     const std::vector<TangentPoint>& points, const DiffConfig& cfg,
                                     SolveMode mode, const ClassifyThresholds& thresholds = {},
                                     int jobs = 1);

// Same experiment run directly on a base manifold (informational: the
// flat-iff-weakly-symmetric equivalence is a statement about TM, not about
// the base; e.g. constant-curvature bases solve the system exactly).
struct BasePointClassification {
  Vec<double> x;
  WeakSymSolution solution;
  double sup_riemann = 0.0;
};

struct BaseClassification {
  SolveMode mode = SolveMode::weak;
  std::vector<BasePointClassification> per_point;
  double max_residual = 0.0;
  double sup_riemann = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> warnings;
};

BaseClassification classify_base(const MetricSpec& base, const std::vector<Vec<double>>& points,
                                 const DiffConfig& cfg, SolveMode mode,
                                 const ClassifyThresholds& thresholds = {}, int jobs = 1);

}  // namespace tbgeo
