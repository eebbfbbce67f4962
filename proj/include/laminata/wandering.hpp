#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laminata/circle.hpp"

namespace laminata::wander {

enum class FailureReason { linked_images, vertex_collision, criticality };

const char* to_string(FailureReason r);

/// Result of iterating a polygon collection for a bounded number of steps.
struct WanderingCertificate {
  std::vector<Polygon> polygons;
  int degree = 2;
  int horizon = 0;
  bool wandering = true;  // wandering-up-to(horizon) when true
  int failed_step = -1;
  FailureReason reason = FailureReason::vertex_collision;
  std::string detail;

  std::string status_str() const;
};

/// Fails at the first step n where an iterate sigma^n(P_i) shares a vertex with, or
/// crosses, any iterate seen before (including other members at the same step), or has a
/// critical boundary chord. Checks are made in that order.
WanderingCertificate check_wandering(const std::vector<Polygon>& polygons, Degree d, int horizon);

struct KiwiVerdict {
  std::size_t vertices = 0;
  std::size_t kiwi_bound = 0;        // d
  unsigned long long general_bound = 0;  // 2^d (saturating)
  bool within_kiwi = true;
  bool within_general = true;
  /// Too many vertices to be a wandering non-(pre)critical polygon.
  bool rejected() const { return !within_kiwi; }
};

KiwiVerdict kiwi_bound_check(const Polygon& g, Degree d);

struct CollectionStats {
  std::vector<int> sizes;
  int n_prime = 0;  // cycles of infinite gaps, user supplied
  int degree = 2;

  long long sum_excess() const;
};

struct Verdict {
  long long lhs = 0;
  long long rhs = 0;
  bool holds = true;
  bool equality = false;
};

/// sum(|G_i| - 2) + N' <= d - 2. Sizes below 3 are rejected with InputError.
Verdict blolev_inequality(const CollectionStats& stats);

struct ChainVerdict {
  std::vector<long long> terms;  // a_0 <= a_1 <= ... ; one link per adjacent pair
  std::vector<bool> links;
  bool holds = true;
  bool tight = false;  // every link an equality
};

ChainVerdict make_chain(std::vector<long long> terms);

/// sum_excess <= k' - l <= d - 1 - l <= d - 2, for l >= 1 and k' >= l.
ChainVerdict doug_inequality(long long sum_excess, long long k_prime, long long l, Degree d);

struct Evidence {
  int step = 0;
  Chord side;
  Rational gap;  // |endpoint difference - k/d|
};

struct CriticalLimitCandidate {
  Chord chord;         // closest approach among the evidence
  Rational k_over_d;
  std::vector<Evidence> evidence;
};

/// Default tolerance 1/64.
Rational default_limit_tolerance();

/// Scans boundary chords of all iterates up to `horizon`; one candidate per target k/d
/// that is approached within `tol`, ordered by first evidence step.
std::vector<CriticalLimitCandidate> detect_critical_limit_chords(const std::vector<Polygon>& polygons,
                                                                 Degree d, int horizon,
                                                                 const Rational& tol);

}  // namespace laminata::wander
