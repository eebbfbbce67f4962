#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "laminata/circle.hpp"

namespace laminata::lam {

inline constexpr int kDefaultHorizon = 64;

struct CrossingPair {
  Chord first;
  Chord second;
};

/// Finite set of pairwise non-crossing chords with a degree.
class Prelamination {
 public:
  explicit Prelamination(Degree d) : degree_(d) {}

  Degree degree() const { return degree_; }
  const std::set<Chord>& chords() const { return chords_; }
  std::size_t size() const { return chords_.size(); }
  bool empty() const { return chords_.empty(); }
  bool contains(const Chord& c) const { return chords_.count(c) != 0; }

 private:
  friend struct PrelaminationAccess;
  Degree degree_;
  std::set<Chord> chords_;
};

struct ValidationResult {
  std::optional<Prelamination> lamination;  // set iff no violations
  std::vector<CrossingPair> violations;
  bool ok() const { return violations.empty(); }
};

/// Accepts iff the chords are pairwise non-crossing. Duplicates collapse.
ValidationResult validate_prelamination(std::span<const Chord> chords, Degree d);

/// Builds a prelamination, throwing InputError that names the first crossing pair.
Prelamination make_prelamination(std::span<const Chord> chords, Degree d);

struct GapImage {
  Polygon source;
  Polygon image;
  int covering_degree = 1;
  bool monotone_covering_ok = true;
};

GapImage gap_image(const Polygon& g, Degree d);

struct ForwardReport {
  bool passed = true;
  std::vector<Chord> missing;  // leaves whose image chord is absent
};

struct PreimageDeficit {
  Chord leaf;
  int found = 0;  // size of the largest pairwise disjoint family of present preimage leaves
};

struct FullReport {
  bool passed = true;
  std::vector<PreimageDeficit> deficient;
};

ForwardReport check_forward_invariant(const Prelamination& l);
/// Restricts the check to `subject` (e.g. all generations below the closure depth).
ForwardReport check_forward_invariant(const Prelamination& l, std::span<const Chord> subject);
FullReport check_full_invariant(const Prelamination& l);
FullReport check_full_invariant(const Prelamination& l, std::span<const Chord> subject);

class FamilyError : public InputError {
 public:
  using InputError::InputError;
};

/// Pairwise unlinked, forward closed collection of leaves and finite gaps.
class GeneratingFamily {
 public:
  /// Validates and throws FamilyError listing every problem found.
  GeneratingFamily(Degree d, std::vector<Polygon> elements);

  Degree degree() const { return degree_; }
  const std::vector<Polygon>& elements() const { return elements_; }

 private:
  Degree degree_;
  std::vector<Polygon> elements_;
};

class PullbackError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Closure {
  Prelamination lamination;
  /// generations[k] holds the chords first added at pullback step k (0 = generators).
  std::vector<std::vector<Chord>> generations;
  /// Preimage leaves selected over all steps, counting those already present.
  std::size_t selected_preimages = 0;

  /// All chords of generation < k.
  std::vector<Chord> chords_below(std::size_t k) const;
};

/// Finite-depth pullback of a generating family. Throws PullbackError when some
/// leaf has no admissible full set of d non-crossing preimage leaves.
Closure pullback_closure(const GeneratingFamily& family, int depth);

/// Preimage leaves chosen for `leaf` against the current chord set (no mutation).
/// Returns an empty vector if no admissible selection exists.
std::vector<Chord> select_preimages(const Chord& leaf, Degree d, const std::set<Chord>& current);

enum class GapKind { degenerate, leaf, finite_gap };
enum class Criticality { non_critical, critical, all_critical };
enum class DynamicsKind { periodic, preperiodic, wandering_at_horizon };

struct GapClass {
  GapKind kind = GapKind::degenerate;
  Criticality criticality = Criticality::non_critical;
  DynamicsKind dynamics = DynamicsKind::wandering_at_horizon;
  int preperiod = 0;
  int period = 0;      // return time of every basis vertex
  int set_period = 0;  // return time of the basis as a set
  int horizon = kDefaultHorizon;
  /// First n with sigma^n(basis) a proper subset of the basis, if any.
  std::optional<int> strict_inclusion_step;
  /// True when strict inclusion happened although no boundary chord is critical.
  bool inclusion_violation = false;

  std::string dynamics_str() const;
};

GapClass classify_gap(const Polygon& g, Degree d, int horizon = kDefaultHorizon);

/// Complementary regions of the prelamination bounded only by chords (no circle arcs).
std::vector<Polygon> finite_gaps(const Prelamination& l);

const char* to_string(GapKind k);
const char* to_string(Criticality c);

}  // namespace laminata::lam
