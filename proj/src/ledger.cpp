#include "laminata/ledger.hpp"

#include <array>
#include <set>
#include <utility>

#include "laminata/angle.hpp"

namespace laminata::fsi {

namespace {

constexpr std::array kAllClasses{
    CriticalClass::wr_periodic_component, CriticalClass::wr_wandering_component,
    CriticalClass::escaping,              CriticalClass::at,
    CriticalClass::cs,                    CriticalClass::ac_wr,
    CriticalClass::p_infinity,            CriticalClass::w_infinity,
    CriticalClass::other,
};

bool in_c_wr(CriticalClass c) {
  return c == CriticalClass::wr_periodic_component || c == CriticalClass::at ||
         c == CriticalClass::cs || c == CriticalClass::ac_wr;
}
bool in_c_wr_prime(CriticalClass c) {
  return c == CriticalClass::wr_wandering_component || c == CriticalClass::w_infinity;
}
bool in_c_esc(CriticalClass c) { return c == CriticalClass::escaping || c == CriticalClass::p_infinity; }

template <typename Pred>
ClassCount count_where(const Portrait& p, Pred pred) {
  ClassCount out;
  std::set<std::string> orbits;
  std::set<std::string> limits;
  for (const auto& c : p.criticals) {
    if (!pred(c.cls)) continue;
    ++out.size;
    orbits.insert(c.grand_orbit);
    limits.insert(c.limit_set);
  }
  out.K = static_cast<long long>(orbits.size());
  out.L = static_cast<long long>(limits.size());
  return out;
}

InequalityRecord chain(std::string name, std::string statement, std::vector<std::string> labels,
                       std::vector<long long> terms) {
  InequalityRecord r;
  r.name = std::move(name);
  r.statement = std::move(statement);
  r.labels = std::move(labels);
  r.terms = std::move(terms);
  r.equality = true;
  for (std::size_t i = 0; i + 1 < r.terms.size(); ++i) {
    const bool ok = r.terms[i] <= r.terms[i + 1];
    r.links.push_back(ok);
    r.holds = r.holds && ok;
    r.equality = r.equality && r.terms[i] == r.terms[i + 1];
  }
  if (!r.holds) r.note = "portrait inconsistent with the " + r.statement;
  return r;
}

bool non_repelling(CycleKind k) {
  return k == CycleKind::attracting || k == CycleKind::parabolic || k == CycleKind::siegel ||
         k == CycleKind::cremer;
}

}  // namespace

long long chi(long long l) { return l > 0 ? 1 : 0; }

Region implied_region(CriticalClass c) {
  if (in_c_wr(c)) return Region::periodic_component;
  if (in_c_wr_prime(c)) return Region::wandering_component;
  if (in_c_esc(c)) return Region::basin_of_infinity;
  return Region::unspecified;
}

std::vector<Violation> validate_portrait(const Portrait& p, bool strict) {
  std::vector<Violation> v;
  if (p.degree < 2) v.push_back({"portrait", "degree", "degree must be >= 2"});
  if (p.n_fatou_cycles < 0) v.push_back({"portrait", "fatou-cycles", "fatou_cycles must be >= 0"});

  std::set<std::string> cycle_ids;
  for (const auto& c : p.cycles) {
    if (!cycle_ids.insert(c.id).second) v.push_back({c.id, "unique-id", "duplicate cycle id"});
    if (c.period < 1) v.push_back({c.id, "period", "cycle period must be >= 1"});
  }

  long long total = 0;
  std::set<std::string> crit_ids;
  std::map<std::string, std::string> linked;  // cycle id -> critical id
  for (const auto& c : p.criticals) {
    if (!crit_ids.insert(c.id).second) v.push_back({c.id, "unique-id", "duplicate critical id"});
    if (c.multiplicity < 1) v.push_back({c.id, "multiplicity", "multiplicity must be >= 1"});
    total += c.multiplicity;
    const Region want = implied_region(c.cls);
    if (c.region && want != Region::unspecified && *c.region != want) {
      std::string rule;
      switch (c.cls) {
        case CriticalClass::p_infinity:
          rule = "p-infinity implies escaping";
          break;
        case CriticalClass::w_infinity:
          rule = "w-infinity implies wr-wandering-component";
          break;
        case CriticalClass::at:
        case CriticalClass::cs:
        case CriticalClass::ac_wr:
          rule = std::string(to_string(c.cls)) + " implies membership in C_wr";
          break;
        default:
          rule = std::string(to_string(c.cls)) + " implies region " + to_string(want);
      }
      v.push_back({c.id, rule,
                   std::string("class ") + to_string(c.cls) + " lies in " + to_string(want) +
                       ", but region is " + to_string(*c.region)});
    }
    if (c.cycle) {
      if (!cycle_ids.count(*c.cycle)) {
        v.push_back({c.id, "cycle-reference", "unknown cycle id '" + *c.cycle + "'"});
      } else {
        linked.emplace(*c.cycle, c.id);
      }
    }
  }
  if (total > p.degree - 1) {
    v.push_back({"criticals", "critical-count",
                 "critical points counted with multiplicity (" + std::to_string(total) +
                     ") exceed d-1 = " + std::to_string(p.degree - 1)});
  }

  for (const auto& w : p.wandering) {
    if (w.eval < 3) v.push_back({w.id, "eval", "eventual valence must be >= 3 (branch continuum)"});
    if (w.location == WanderingLocation::periodic_component && w.component.empty()) {
      v.push_back({w.id, "component", "periodic-component entry needs a component id"});
    }
  }

  if (strict) {
    for (const auto& c : p.cycles) {
      if (!non_repelling(c.kind)) continue;
      auto it = linked.find(c.id);
      if (it == linked.end()) {
        v.push_back({c.id, "association",
                     std::string(to_string(c.kind)) + " cycle has no associated critical point"});
        continue;
      }
      for (const auto& cr : p.criticals) {
        if (cr.cycle && *cr.cycle == c.id && !in_c_wr(cr.cls)) {
          v.push_back({cr.id, "association",
                       "critical associated to a non-repelling cycle must be weakly recurrent in a "
                       "periodic component"});
        }
      }
    }
  }
  return v;
}

LedgerCounts derive_counts(const Portrait& p) {
  LedgerCounts k;
  k.degree = p.degree;
  long long cremer = 0;
  for (const auto& c : p.cycles) {
    if (c.kind == CycleKind::cremer) ++cremer;
    if (c.kind == CycleKind::repelling_no_periodic_rays) ++k.N_irr;
  }
  k.N_FC = p.n_fatou_cycles + cremer;

  std::set<std::string> components;
  for (const auto& w : p.wandering) {
    if (w.location == WanderingLocation::periodic_component) {
      ++k.m;
      k.sum_excess_periodic += w.eval - 2;
      components.insert(w.component);
    } else {
      ++k.m_prime;
      k.sum_excess_wandering += w.eval - 2;
    }
  }
  k.N_co = static_cast<long long>(components.size());
  k.chi_m = chi(k.m);
  k.chi_m_prime = chi(k.m_prime);

  k.C_wr = count_where(p, in_c_wr);
  k.C_wr_prime = count_where(p, in_c_wr_prime);
  k.C_esc = count_where(p, in_c_esc);
  for (CriticalClass cls : kAllClasses) {
    k.per_class[cls] = count_where(p, [cls](CriticalClass c) { return c == cls; });
  }
  return k;
}

InequalityRecord check_inequality_periodic(const Portrait& p) {
  const auto k = derive_counts(p);
  auto r = chain("extended-fsi.periodic", "extended Fatou-Shishikura inequality",
                 {"N_FC + N_co + sum(eval-2)", "|C_wr|"},
                 {k.N_FC + k.N_co + k.sum_excess_periodic, k.C_wr.size});
  if (k.N_co != k.chi_m) {
    if (!r.note.empty()) r.note += "; ";
    r.note += "N_co = " + std::to_string(k.N_co) + " differs from chi(m) = " + std::to_string(k.chi_m);
  }
  return r;
}

InequalityRecord check_inequality_wandering(const Portrait& p) {
  const auto k = derive_counts(p);
  return chain("extended-fsi.wandering", "wandering-component count",
               {"N_irr + chi(m') + sum(eval'-2)", "chi(m')|C'_wr| + |C_esc|"},
               {k.N_irr + k.chi_m_prime + k.sum_excess_wandering,
                k.chi_m_prime * k.C_wr_prime.size + k.C_esc.size});
}

InequalityRecord check_combined(const Portrait& p) {
  const auto per = check_inequality_periodic(p);
  const auto wan = check_inequality_wandering(p);
  return chain("extended-fsi.combined", "summed Fatou-Shishikura bound",
               {"periodic lhs + wandering lhs", "|C_wr| + chi(m')|C'_wr| + |C_esc|", "d - 1"},
               {per.lhs() + wan.lhs(), per.rhs() + wan.rhs(), static_cast<long long>(p.degree) - 1});
}

std::vector<InequalityRecord> check_maintech(const Portrait& p) {
  const auto k = derive_counts(p);
  if (k.m == 0) throw InputError("wandering chain needs a nonempty wandering collection (m >= 1)");
  const auto& ac = k.per_class.at(CriticalClass::ac_wr);
  const auto& at = k.per_class.at(CriticalClass::at);
  const auto& cs = k.per_class.at(CriticalClass::cs);

  std::vector<InequalityRecord> out;
  out.push_back(chain("maintech.wandering", "branch continua bound in periodic components",
                      {"sum(eval-2)", "K(C^ac_wr) - L(C^ac_wr)", "K(C^ac_wr) - 1", "|C^ac_wr| - 1"},
                      {k.sum_excess_periodic, ac.K - ac.L, ac.K - 1, ac.size - 1}));

  auto eq = chain("maintech.fatou-count", "Fatou cycle association",
                  {"N_FC", "K(C_at) + K(C_cs)"}, {k.N_FC, at.K + cs.K});
  eq.equation = true;
  eq.holds = eq.terms[0] == eq.terms[1];
  eq.equality = eq.holds;
  eq.note = eq.holds ? "" : "portrait inconsistent with the " + eq.statement;
  out.push_back(std::move(eq));

  out.push_back(chain("maintech.summed", "branch continua bound in periodic components",
                      {"sum(eval-2) + N_FC", "K(C_wr) - 1", "|C_wr| - 1", "d - 2"},
                      {k.sum_excess_periodic + k.N_FC, k.C_wr.K - 1, k.C_wr.size - 1,
                       static_cast<long long>(p.degree) - 2}));
  return out;
}

InequalityRecord check_3full(const Portrait& p) {
  const auto k = derive_counts(p);
  if (k.m_prime == 0) throw InputError("wandering-component chain needs m' >= 1");
  const auto& w = k.per_class.at(CriticalClass::w_infinity);
  return chain("wandering-components", "branch continua bound in wandering components",
               {"sum(eval'-2)", "K(C^w_inf) - L(C^w_inf)", "|C^w_inf| - 1", "|C'_wr| - 1", "d - 2"},
               {k.sum_excess_wandering, w.K - w.L, w.size - 1, k.C_wr_prime.size - 1,
                static_cast<long long>(p.degree) - 2});
}

InequalityRecord check_ninfty(const Portrait& p) {
  const auto k = derive_counts(p);
  const auto& pi = k.per_class.at(CriticalClass::p_infinity);
  return chain("escaping-chain", "ray-less repelling cycle bound",
               {"N_irr", "K(C^p_inf)", "|C^p_inf|", "|C_esc|", "d - 1"},
               {k.N_irr, pi.K, pi.size, k.C_esc.size, static_cast<long long>(p.degree) - 1});
}

bool LedgerReport::consistent() const {
  for (const auto& r : records) {
    if (r.applicable && !r.holds) return false;
  }
  return true;
}

LedgerReport run_ledger(const Portrait& p) {
  LedgerReport rep;
  rep.counts = derive_counts(p);
  rep.records.push_back(check_inequality_periodic(p));
  rep.records.push_back(check_inequality_wandering(p));
  rep.records.push_back(check_combined(p));
  if (rep.counts.m > 0) {
    for (auto& r : check_maintech(p)) rep.records.push_back(std::move(r));
  } else {
    for (const char* name : {"maintech.wandering", "maintech.fatou-count", "maintech.summed"}) {
      InequalityRecord r;
      r.name = name;
      r.applicable = false;
      r.note = "requires m >= 1";
      rep.records.push_back(std::move(r));
    }
  }
  if (rep.counts.m_prime > 0) {
    rep.records.push_back(check_3full(p));
  } else {
    InequalityRecord r;
    r.name = "wandering-components";
    r.applicable = false;
    r.note = "requires m' >= 1";
    rep.records.push_back(std::move(r));
  }
  rep.records.push_back(check_ninfty(p));
  return rep;
}

const char* to_string(CycleKind k) {
  switch (k) {
    case CycleKind::attracting:
      return "attracting";
    case CycleKind::parabolic:
      return "parabolic";
    case CycleKind::siegel:
      return "siegel";
    case CycleKind::cremer:
      return "cremer";
    case CycleKind::repelling_with_periodic_rays:
      return "repelling-with-periodic-rays";
    case CycleKind::repelling_no_periodic_rays:
      return "repelling-no-periodic-rays";
  }
  return "?";
}

const char* to_string(CriticalClass c) {
  switch (c) {
    case CriticalClass::wr_periodic_component:
      return "wr-periodic-component";
    case CriticalClass::wr_wandering_component:
      return "wr-wandering-component";
    case CriticalClass::escaping:
      return "escaping";
    case CriticalClass::at:
      return "at";
    case CriticalClass::cs:
      return "cs";
    case CriticalClass::ac_wr:
      return "ac-wr";
    case CriticalClass::p_infinity:
      return "p-infinity";
    case CriticalClass::w_infinity:
      return "w-infinity";
    case CriticalClass::other:
      return "other";
  }
  return "?";
}

const char* to_string(Region r) {
  switch (r) {
    case Region::periodic_component:
      return "periodic-component";
    case Region::wandering_component:
      return "wandering-component";
    case Region::basin_of_infinity:
      return "escaping";
    case Region::unspecified:
      return "unspecified";
  }
  return "?";
}

const char* to_string(WanderingLocation l) {
  return l == WanderingLocation::periodic_component ? "periodic-component" : "wandering-component";
}

std::optional<CycleKind> parse_cycle_kind(const std::string& s) {
  for (auto k : {CycleKind::attracting, CycleKind::parabolic, CycleKind::siegel, CycleKind::cremer,
                 CycleKind::repelling_with_periodic_rays, CycleKind::repelling_no_periodic_rays}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<CriticalClass> parse_critical_class(const std::string& s) {
  for (auto c : kAllClasses) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

std::optional<Region> parse_region(const std::string& s) {
  for (auto r : {Region::periodic_component, Region::wandering_component, Region::basin_of_infinity}) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

std::optional<WanderingLocation> parse_location(const std::string& s) {
  if (s == "periodic-component") return WanderingLocation::periodic_component;
  if (s == "wandering-component") return WanderingLocation::wandering_component;
  return std::nullopt;
}

}  // namespace laminata::fsi
