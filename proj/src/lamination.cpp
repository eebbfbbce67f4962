#include "laminata/lamination.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <utility>

namespace laminata::lam {

struct PrelaminationAccess {
  static std::set<Chord>& chords(Prelamination& l) { return l.chords_; }
};

namespace {

// Chords reduced to integer ranks of their endpoints; crossing only depends on order.
struct RankedChord {
  std::size_t lo;
  std::size_t hi;
  std::size_t index;
};

std::vector<RankedChord> rank_chords(const std::vector<Chord>& chords) {
  std::vector<Angle> pts;
  pts.reserve(chords.size() * 2);
  for (const auto& c : chords) {
    pts.push_back(c.lo());
    pts.push_back(c.hi());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto rank = [&](const Angle& a) {
    return static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), a) - pts.begin());
  };
  std::vector<RankedChord> out;
  out.reserve(chords.size());
  for (std::size_t i = 0; i < chords.size(); ++i) {
    out.push_back({rank(chords[i].lo()), rank(chords[i].hi()), i});
  }
  return out;
}

bool ranked_cross(const RankedChord& p, const RankedChord& q) {
  if (p.lo == p.hi || q.lo == q.hi) return false;
  if (p.lo == q.lo || p.lo == q.hi || p.hi == q.lo || p.hi == q.hi) return false;
  const bool lo_in = p.lo < q.lo && q.lo < p.hi;
  const bool hi_in = p.lo < q.hi && q.hi < p.hi;
  return lo_in != hi_in;
}

// Stack test for a laminar interval family; chords are intervals [lo, hi] of [0,1).
bool is_laminar(std::vector<RankedChord> rc) {
  std::sort(rc.begin(), rc.end(), [](const RankedChord& a, const RankedChord& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi > b.hi;
  });
  std::vector<RankedChord> stack;
  for (const auto& c : rc) {
    if (c.lo == c.hi) continue;
    while (!stack.empty() && stack.back().hi <= c.lo) stack.pop_back();
    if (!stack.empty() && stack.back().hi < c.hi) return false;
    stack.push_back(c);
  }
  return true;
}

// Adjacency of a non-crossing chord set, supporting crossing queries for new chords.
class ChordIndex {
 public:
  void insert(const Chord& c) {
    if (c.degenerate()) return;
    adj_[c.lo()].push_back(c.hi());
    adj_[c.hi()].push_back(c.lo());
  }

  // Scans the arc (lo, hi); the span of a chord lying inside the arc is skipped,
  // since nothing under it can reach outside without crossing it.
  bool crosses(const Chord& c) const {
    if (c.degenerate()) return false;
    const Angle& lo = c.lo();
    const Angle& hi = c.hi();
    auto it = adj_.upper_bound(lo);
    while (it != adj_.end() && it->first < hi) {
      const Angle* furthest = nullptr;
      for (const auto& p : it->second) {
        if (p < lo || hi < p) return true;
        if (it->first < p && (furthest == nullptr || *furthest < p)) furthest = &p;
      }
      if (furthest != nullptr) {
        if (*furthest == hi) break;
        it = adj_.upper_bound(*furthest);
      } else {
        ++it;
      }
    }
    return false;
  }

 private:
  std::map<Angle, std::vector<Angle>> adj_;
};

ChordIndex index_of(const std::set<Chord>& chords) {
  ChordIndex idx;
  for (const auto& c : chords) idx.insert(c);
  return idx;
}

std::vector<Chord> select_with_index(const Chord& leaf, Degree d, const std::set<Chord>& current,
                                     const ChordIndex& index) {
  const auto pa = preimages(leaf.lo(), d);
  const auto pb = preimages(leaf.hi(), d);
  const std::size_t n = pa.size();

  std::vector<Chord> chosen;
  std::vector<Chord> best;
  int best_score = -1;
  std::vector<bool> used(n, false);

  // Depth-first over pairings in circular order; the first complete selection with the
  // largest number of already present leaves wins.
  std::function<void(std::size_t, int)> search = [&](std::size_t i, int score) {
    if (i == n) {
      if (score > best_score) {
        best_score = score;
        best = chosen;
      }
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      Chord cand(pa[i], pb[j]);
      const bool present = current.count(cand) != 0;
      if (!present && index.crosses(cand)) continue;
      bool ok = true;
      for (const auto& c : chosen) {
        if (chords_cross(c, cand)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[j] = true;
      chosen.push_back(cand);
      search(i + 1, score + (present ? 1 : 0));
      chosen.pop_back();
      used[j] = false;
    }
  };
  search(0, 0);
  return best;
}

// Largest family of pairwise disjoint preimage leaves of `leaf` present in `chords`.
int disjoint_preimages_present(const Chord& leaf, Degree d, const std::set<Chord>& chords) {
  const auto pa = preimages(leaf.lo(), d);
  const auto pb = preimages(leaf.hi(), d);
  const std::size_t n = pa.size();
  std::vector<std::vector<std::size_t>> edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (chords.count(Chord(pa[i], pb[j])) != 0) edges[i].push_back(j);
    }
  }
  std::vector<int> match(n, -1);
  int size = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    std::function<bool(std::size_t)> augment = [&](std::size_t u) {
      for (std::size_t v : edges[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        if (match[v] < 0 || augment(static_cast<std::size_t>(match[v]))) {
          match[v] = static_cast<int>(u);
          return true;
        }
      }
      return false;
    };
    if (augment(i)) ++size;
  }
  return size;
}

bool subset_of(const Polygon& inner, const Polygon& outer) {
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](const Angle& a) { return outer.contains(a); });
}

}  // namespace

ValidationResult validate_prelamination(std::span<const Chord> chords, Degree d) {
  std::set<Chord> unique(chords.begin(), chords.end());
  std::vector<Chord> list(unique.begin(), unique.end());
  auto ranked = rank_chords(list);

  ValidationResult result;
  if (!is_laminar(ranked)) {
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      for (std::size_t j = i + 1; j < ranked.size(); ++j) {
        if (ranked_cross(ranked[i], ranked[j])) {
          result.violations.push_back({list[ranked[i].index], list[ranked[j].index]});
        }
      }
    }
  }
  if (result.violations.empty()) {
    Prelamination l(d);
    PrelaminationAccess::chords(l) = std::move(unique);
    result.lamination = std::move(l);
  }
  return result;
}

Prelamination make_prelamination(std::span<const Chord> chords, Degree d) {
  auto r = validate_prelamination(chords, d);
  if (!r.ok()) {
    throw InputError("chords " + r.violations.front().first.str() + " and " +
                     r.violations.front().second.str() + " cross");
  }
  return std::move(*r.lamination);
}

GapImage gap_image(const Polygon& g, Degree d) {
  std::vector<Angle> w;
  w.reserve(g.size());
  for (const auto& v : g.vertices()) w.push_back(sigma(v, d));
  GapImage out{g, Polygon::merged(w), 1, true};
  const auto& img = out.image.vertices();
  const std::size_t m = img.size();
  if (m == 1) return out;

  auto pos = [&](const Angle& a) {
    return static_cast<std::size_t>(std::lower_bound(img.begin(), img.end(), a) - img.begin());
  };
  const std::size_t n = w.size();
  std::size_t advances = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = pos(w[i]);
    const std::size_t b = pos(w[(i + 1) % n]);
    if (a == b) continue;
    if (b == (a + 1) % m) {
      ++advances;
    } else {
      out.monotone_covering_ok = false;
    }
  }
  if (out.monotone_covering_ok) {
    out.covering_degree = static_cast<int>(advances / m);
  } else {
    out.covering_degree = 0;
  }
  return out;
}

ForwardReport check_forward_invariant(const Prelamination& l) {
  std::vector<Chord> all(l.chords().begin(), l.chords().end());
  return check_forward_invariant(l, all);
}

ForwardReport check_forward_invariant(const Prelamination& l, std::span<const Chord> subject) {
  ForwardReport r;
  for (const auto& c : subject) {
    if (c.degenerate()) continue;
    const Chord img = sigma(c, l.degree());
    if (img.degenerate()) continue;
    if (!l.contains(img)) r.missing.push_back(c);
  }
  r.passed = r.missing.empty();
  return r;
}

FullReport check_full_invariant(const Prelamination& l) {
  std::vector<Chord> all(l.chords().begin(), l.chords().end());
  return check_full_invariant(l, all);
}

FullReport check_full_invariant(const Prelamination& l, std::span<const Chord> subject) {
  FullReport r;
  for (const auto& c : subject) {
    if (c.degenerate()) continue;
    const int found = disjoint_preimages_present(c, l.degree(), l.chords());
    if (found < l.degree().value()) r.deficient.push_back({c, found});
  }
  r.passed = r.deficient.empty();
  return r;
}

GeneratingFamily::GeneratingFamily(Degree d, std::vector<Polygon> elements) : degree_(d) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  elements_ = std::move(elements);

  std::vector<std::string> problems;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = i + 1; j < elements_.size(); ++j) {
      if (!sets_unlinked(elements_[i], elements_[j])) {
        problems.push_back("elements {" + elements_[i].str() + "} and {" + elements_[j].str() +
                           "} are linked");
      }
    }
  }
  for (const auto& e : elements_) {
    const GapImage gi = gap_image(e, d);
    if (!gi.monotone_covering_ok) {
      problems.push_back("image of {" + e.str() + "} is undefined (boundary map is not monotone)");
      continue;
    }
    if (gi.image.size() == 1) continue;
    if (!std::binary_search(elements_.begin(), elements_.end(), gi.image)) {
      problems.push_back("image {" + gi.image.str() + "} of {" + e.str() + "} is not in the family");
    }
  }
  if (!problems.empty()) {
    std::string msg = "invalid generating family:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw FamilyError(msg);
  }
}

std::vector<Chord> Closure::chords_below(std::size_t k) const {
  std::vector<Chord> out;
  for (std::size_t g = 0; g < k && g < generations.size(); ++g) {
    out.insert(out.end(), generations[g].begin(), generations[g].end());
  }
  return out;
}

std::vector<Chord> select_preimages(const Chord& leaf, Degree d, const std::set<Chord>& current) {
  if (leaf.degenerate()) return {};
  return select_with_index(leaf, d, current, index_of(current));
}

Closure pullback_closure(const GeneratingFamily& family, int depth) {
  if (depth < 0) throw InputError("pullback depth must be >= 0");
  const Degree d = family.degree();
  std::set<Chord> chords;
  ChordIndex index;

  std::vector<Chord> gen0;
  for (const auto& e : family.elements()) {
    for (const auto& c : e.boundary_chords()) {
      if (chords.insert(c).second) {
        index.insert(c);
        gen0.push_back(c);
      }
    }
  }
  std::sort(gen0.begin(), gen0.end());

  Closure cl{Prelamination(d), {}, 0};
  cl.generations.push_back(gen0);
  std::vector<Chord> frontier = gen0;
  for (int step = 1; step <= depth; ++step) {
    std::vector<Chord> next;
    for (const auto& leaf : frontier) {
      auto sel = select_with_index(leaf, d, chords, index);
      if (sel.empty()) {
        throw PullbackError("no admissible preimage selection for leaf " + leaf.str() +
                            " at pullback step " + std::to_string(step));
      }
      cl.selected_preimages += sel.size();
      for (auto& c : sel) {
        if (chords.insert(c).second) {
          index.insert(c);
          next.push_back(std::move(c));
        }
      }
    }
    std::sort(next.begin(), next.end());
    cl.generations.push_back(next);
    frontier = std::move(next);
  }
  PrelaminationAccess::chords(cl.lamination) = std::move(chords);
  return cl;
}

std::string GapClass::dynamics_str() const {
  switch (dynamics) {
    case DynamicsKind::periodic:
      return "periodic(" + std::to_string(period) + ")";
    case DynamicsKind::preperiodic:
      return "preperiodic(" + std::to_string(preperiod) + "," + std::to_string(period) + ")";
    case DynamicsKind::wandering_at_horizon:
      return "wandering-at-horizon(" + std::to_string(horizon) + ")";
  }
  return "?";
}

GapClass classify_gap(const Polygon& g, Degree d, int horizon) {
  GapClass gc;
  gc.horizon = horizon;
  gc.kind = g.size() == 1 ? GapKind::degenerate : g.size() == 2 ? GapKind::leaf : GapKind::finite_gap;

  const GapImage gi = gap_image(g, d);
  if (g.size() > 1 && gi.image.size() == 1) {
    gc.criticality = Criticality::all_critical;
  } else if (gi.image.size() < g.size()) {
    gc.criticality = Criticality::critical;
  }

  std::map<Polygon, int> seen;
  seen.emplace(g, 0);
  Polygon cur = g;
  for (int n = 1; n <= horizon; ++n) {
    cur = sigma(cur, d);
    if (!gc.strict_inclusion_step && cur != g && subset_of(cur, g)) gc.strict_inclusion_step = n;
    auto [it, inserted] = seen.emplace(cur, n);
    if (!inserted) {
      gc.preperiod = it->second;
      gc.set_period = n - it->second;
      // sigma^set_period permutes the basis; the vertices return after a multiple of it.
      const std::vector<Angle> base = cur.vertices();
      std::vector<Angle> moved = base;
      gc.period = 0;
      for (std::size_t k = 1; k <= base.size(); ++k) {
        for (auto& v : moved) v = sigma_n(v, d, gc.set_period);
        if (moved == base) {
          gc.period = static_cast<int>(k) * gc.set_period;
          break;
        }
      }
      gc.dynamics = gc.preperiod == 0 ? DynamicsKind::periodic : DynamicsKind::preperiodic;
      break;
    }
  }
  if (gc.strict_inclusion_step) {
    const auto sides = g.boundary_chords();
    gc.inclusion_violation = std::none_of(sides.begin(), sides.end(),
                                          [&](const Chord& c) { return is_critical_chord(c, d); });
  }
  return gc;
}

std::vector<Polygon> finite_gaps(const Prelamination& l) {
  // Neighbours of each vertex ordered by positive offset from it.
  std::map<Angle, std::vector<Angle>> nbrs;
  for (const auto& c : l.chords()) {
    if (c.degenerate()) continue;
    nbrs[c.lo()].push_back(c.hi());
    nbrs[c.hi()].push_back(c.lo());
  }
  for (auto& [v, ns] : nbrs) {
    std::sort(ns.begin(), ns.end(), [&v = v](const Angle& a, const Angle& b) {
      return ccw_offset(v, a) < ccw_offset(v, b);
    });
  }

  std::set<std::pair<Angle, Angle>> visited;
  std::set<Polygon> faces;
  for (const auto& [start_u, start_ns] : nbrs) {
    for (const auto& start_v : start_ns) {
      if (visited.count({start_u, start_v})) continue;
      std::vector<Angle> face;
      Angle u = start_u;
      Angle v = start_v;
      bool closed = true;
      while (true) {
        visited.emplace(u, v);
        face.push_back(v);
        const auto& ns = nbrs.at(v);
        const auto it = std::find(ns.begin(), ns.end(), u);
        if (it == ns.begin()) {
          closed = false;  // the region reaches a circle arc next to v
          break;
        }
        Angle w = *(it - 1);
        u = std::move(v);
        v = std::move(w);
        if (u == start_u && v == start_v) break;
        if (face.size() > 4 * l.size() + 4) {
          closed = false;
          break;
        }
      }
      if (closed && face.size() >= 3) faces.insert(Polygon(std::move(face)));
    }
  }
  return {faces.begin(), faces.end()};
}

const char* to_string(GapKind k) {
  switch (k) {
    case GapKind::degenerate:
      return "degenerate";
    case GapKind::leaf:
      return "leaf";
    case GapKind::finite_gap:
      return "finite-gap";
  }
  return "?";
}

const char* to_string(Criticality c) {
  switch (c) {
    case Criticality::non_critical:
      return "non-critical";
    case Criticality::critical:
      return "critical";
    case Criticality::all_critical:
      return "all-critical";
  }
  return "?";
}

}  // namespace laminata::lam
