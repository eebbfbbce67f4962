#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace laminata::fsi {

enum class CycleKind {
  attracting,
  parabolic,
  siegel,
  cremer,
  repelling_with_periodic_rays,
  repelling_no_periodic_rays,
};

/// Critical point classes. C_wr = {wr-periodic-component, at, cs, ac-wr},
/// C'_wr = {wr-wandering-component, w-infinity}, C_esc = {escaping, p-infinity}.
enum class CriticalClass {
  wr_periodic_component,
  wr_wandering_component,
  escaping,
  at,
  cs,
  ac_wr,
  p_infinity,
  w_infinity,
  other,
};

/// Where a critical point sits; defaults to the region its class implies.
enum class Region { periodic_component, wandering_component, basin_of_infinity, unspecified };

enum class WanderingLocation { periodic_component, wandering_component };

struct CycleRecord {
  std::string id;
  int period = 1;
  CycleKind kind = CycleKind::attracting;
};

struct CriticalRecord {
  std::string id;
  CriticalClass cls = CriticalClass::other;
  std::string grand_orbit;
  std::string limit_set;
  int multiplicity = 1;
  std::optional<Region> region;      // explicit region, checked against the class
  std::optional<std::string> cycle;  // id of an associated non-repelling cycle
};

struct WanderingEntry {
  std::string id;
  int eval = 3;
  WanderingLocation location = WanderingLocation::periodic_component;
  std::string component;  // cycle-of-components label for periodic-component entries
};

struct Portrait {
  int degree = 2;
  int n_fatou_cycles = 0;
  std::vector<CycleRecord> cycles;
  std::vector<CriticalRecord> criticals;
  std::vector<WanderingEntry> wandering;
};

struct Violation {
  std::string record;
  std::string rule;
  std::string message;
};

/// Consistency rules; `strict` adds the association checks for non-repelling cycles.
std::vector<Violation> validate_portrait(const Portrait& p, bool strict = false);

struct ClassCount {
  long long size = 0;  // distinct critical points
  long long K = 0;     // distinct grand orbits
  long long L = 0;     // distinct limit sets
};

struct LedgerCounts {
  long long N_FC = 0;
  long long N_irr = 0;
  long long N_co = 0;
  long long m = 0;
  long long m_prime = 0;
  long long chi_m = 0;
  long long chi_m_prime = 0;
  long long sum_excess_periodic = 0;   // over periodic-component entries
  long long sum_excess_wandering = 0;  // over wandering-component entries
  ClassCount C_wr;
  ClassCount C_wr_prime;
  ClassCount C_esc;
  std::map<CriticalClass, ClassCount> per_class;  // every class, zero when absent
  int degree = 2;
};

long long chi(long long l);

LedgerCounts derive_counts(const Portrait& p);

/// A chain a_0 <= a_1 <= ... (or a single equation a_0 = a_1) evaluated exactly.
struct InequalityRecord {
  std::string name;
  std::vector<std::string> labels;
  std::vector<long long> terms;
  std::vector<bool> links;
  bool equation = false;  // '=' instead of '<='
  bool holds = true;
  bool equality = false;  // every link tight
  bool applicable = true;
  std::string statement;  // the result the chain is checked against
  std::string note;

  long long lhs() const { return terms.empty() ? 0 : terms.front(); }
  long long rhs() const { return terms.empty() ? 0 : terms.back(); }
};

InequalityRecord check_inequality_periodic(const Portrait& p);
InequalityRecord check_inequality_wandering(const Portrait& p);
/// Summed inequality and the final bound by d - 1.
InequalityRecord check_combined(const Portrait& p);
/// Three records: the wandering chain, the N_FC equation, the summed chain.
/// Throws InputError when m = 0.
std::vector<InequalityRecord> check_maintech(const Portrait& p);
/// Wandering-component chain; throws InputError when m' = 0.
InequalityRecord check_3full(const Portrait& p);
InequalityRecord check_ninfty(const Portrait& p);

struct LedgerReport {
  LedgerCounts counts;
  std::vector<InequalityRecord> records;
  bool consistent() const;  // every applicable record holds
};

LedgerReport run_ledger(const Portrait& p);

const char* to_string(CycleKind k);
const char* to_string(CriticalClass c);
const char* to_string(Region r);
const char* to_string(WanderingLocation l);
std::optional<CycleKind> parse_cycle_kind(const std::string& s);
std::optional<CriticalClass> parse_critical_class(const std::string& s);
std::optional<Region> parse_region(const std::string& s);
std::optional<WanderingLocation> parse_location(const std::string& s);

Region implied_region(CriticalClass c);

}  // namespace laminata::fsi
