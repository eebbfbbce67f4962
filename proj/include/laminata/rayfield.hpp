#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laminata/circle.hpp"
#include "laminata/lamination.hpp"
#include "laminata/polynomial.hpp"

namespace laminata::ray {

struct GreenBudget {
  int max_iterations = 2000;
  double escape_radius = 1e8;
};

struct GreenValue {
  double level = 0.0;  // 0 when the orbit stays bounded within the budget
  int escape_iterations = 0;
};

/// Escape-rate potential lim d^-n log|P^n(z)|, evaluated in monic centered coordinates.
GreenValue green_level(const PolySpec& p, cplx z, const GreenBudget& budget = {});
GreenValue green_level(const Normalized& q, cplx w, const GreenBudget& budget = {});

struct CriticalPoint {
  cplx z;
  int multiplicity = 1;
  GreenValue green;
  double residual = 0.0;
  bool residual_ok = true;  // |P'(z)| <= 1e-8 * scale
};

/// Roots of P' merged by proximity, sorted by (re, im).
std::vector<CriticalPoint> critical_points(const PolySpec& p, const GreenBudget& budget = {});
/// Critical points with positive level, highest level first.
std::vector<CriticalPoint> escaping_criticals(const PolySpec& p, const GreenBudget& budget = {});

struct RayParams {
  double start_level = 5.0;
  double shrink = 2.0;
  int steps_per_stage = 4;
  double landing_tolerance = 1e-9;
  double min_level = 1e-12;
  int max_points = 20000;
  double precritical_radius = 1e-4;
  /// Newton targets are placed on P^n with d^n * level >= newton_level.
  double newton_level = 20.0;
  int cauchy_tail = 10;
  /// Newton refinement of the landing point on the (pre)periodic equation.
  bool refine_landing = true;
  GreenBudget budget;
};

enum class RayStatus { landed, non_smooth_suspect, truncated };

const char* to_string(RayStatus s);

struct RayTrace {
  Angle angle;
  std::vector<cplx> points;    // original coordinates
  std::vector<double> levels;  // strictly decreasing
  RayStatus status = RayStatus::truncated;
  cplx landing{0.0, 0.0};
  double residual = 0.0;
  bool refined = false;                  // landing obtained by periodic-point refinement
  cplx near_precritical{0.0, 0.0};       // non-smooth-suspect only
  double flag_level = 0.0;
  std::string label;                     // "critical-point" or "precritical(j)"
  std::string diagnostic;
};

RayTrace trace_ray(const PolySpec& p, const Angle& t, const RayParams& params = {});

struct CoLandingGroup {
  std::vector<Angle> angles;  // sorted
  cplx landing_point;         // mean of member landings
  double spread = 0.0;        // max pairwise distance
};

/// Single-linkage clustering of landed traces at distance tol; groups of size >= 2.
std::vector<CoLandingGroup> co_landing_groups(const std::vector<RayTrace>& traces, double tol);

/// Worker count from LAMINATA_THREADS, else hardware concurrency; at least 1.
int worker_count();

/// Traces every angle; results in input order regardless of scheduling.
std::vector<RayTrace> trace_rays(const PolySpec& p, const std::vector<Angle>& angles,
                                 const RayParams& params = {}, int threads = 0);

struct SampledLamination {
  int degree = 2;
  long long q = 1;
  std::vector<Chord> chords;  // sorted, distinct
  std::vector<CoLandingGroup> groups;
  std::vector<lam::CrossingPair> artifacts;
  std::vector<RayTrace> traces;
  std::vector<std::string> failures;
  bool advisory = false;  // escaping critical points present
};

SampledLamination sample_lamination(const PolySpec& p, long long q, const RayParams& params = {},
                                    double colanding_tol = 1e-6, int threads = 0);

/// Closed curve at the given level, one point per external angle k/samples.
/// Throws InputError unless level exceeds every escaping critical level.
std::vector<cplx> trace_equipotential(const PolySpec& p, double level, int samples,
                                      const RayParams& params = {});

}  // namespace laminata::ray
