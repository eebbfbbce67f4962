#include "laminata/wandering.hpp"

#include <algorithm>
#include <map>

namespace laminata::wander {

const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::linked_images:
      return "linked-images";
    case FailureReason::vertex_collision:
      return "vertex-collision";
    case FailureReason::criticality:
      return "criticality";
  }
  return "?";
}

std::string WanderingCertificate::status_str() const {
  if (wandering) return "wandering-up-to(" + std::to_string(horizon) + ")";
  return "failed(step " + std::to_string(failed_step) + ", " + to_string(reason) + ")";
}

WanderingCertificate check_wandering(const std::vector<Polygon>& polygons, Degree d, int horizon) {
  WanderingCertificate cert;
  cert.polygons = polygons;
  cert.degree = d.value();
  cert.horizon = horizon;

  struct Seen {
    int step;
    std::size_t member;
    Polygon poly;
  };
  std::vector<Seen> seen;
  std::map<Angle, std::size_t> owner;  // vertex -> index into seen

  auto fail = [&](int step, FailureReason r, std::string detail) {
    cert.wandering = false;
    cert.failed_step = step;
    cert.reason = r;
    cert.detail = std::move(detail);
    return cert;
  };
  auto label = [](const Seen& s) {
    return "iterate " + std::to_string(s.step) + " of polygon " + std::to_string(s.member) + " {" +
           s.poly.str() + "}";
  };

  std::vector<Polygon> cur = polygons;
  for (int n = 0; n <= horizon; ++n) {
    if (n > 0) {
      for (std::size_t i = 0; i < cur.size(); ++i) {
        Polygon img = sigma(cur[i], d);
        if (img.size() < cur[i].size()) {
          return fail(n, FailureReason::vertex_collision,
                      "sigma is not injective on {" + cur[i].str() + "} of polygon " +
                          std::to_string(i));
        }
        cur[i] = std::move(img);
      }
    }
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const Polygon& p = cur[i];
      for (const auto& v : p.vertices()) {
        if (auto it = owner.find(v); it != owner.end()) {
          return fail(n, FailureReason::vertex_collision,
                      v.str() + " of {" + p.str() + "} is shared with " + label(seen[it->second]));
        }
      }
      for (const auto& s : seen) {
        if (!sets_unlinked(p, s.poly)) {
          return fail(n, FailureReason::linked_images, "{" + p.str() + "} is linked with " + label(s));
        }
      }
      for (const auto& c : p.boundary_chords()) {
        if (is_critical_chord(c, d)) {
          return fail(n, FailureReason::criticality, "boundary chord " + c.str() + " is critical");
        }
      }
      seen.push_back({n, i, p});
      for (const auto& v : p.vertices()) owner.emplace(v, seen.size() - 1);
    }
  }
  return cert;
}

KiwiVerdict kiwi_bound_check(const Polygon& g, Degree d) {
  KiwiVerdict v;
  v.vertices = g.size();
  v.kiwi_bound = static_cast<std::size_t>(d.value());
  v.general_bound = d.value() >= 63 ? ~0ULL : (1ULL << d.value());
  v.within_kiwi = v.vertices <= v.kiwi_bound;
  v.within_general = v.vertices <= v.general_bound;
  return v;
}

long long CollectionStats::sum_excess() const {
  long long s = 0;
  for (int n : sizes) s += n - 2;
  return s;
}

Verdict blolev_inequality(const CollectionStats& stats) {
  for (int n : stats.sizes) {
    if (n < 3) throw InputError("branch gap needs at least 3 vertices, got " + std::to_string(n));
  }
  Verdict v;
  v.lhs = stats.sum_excess() + stats.n_prime;
  v.rhs = stats.degree - 2;
  v.holds = v.lhs <= v.rhs;
  v.equality = v.lhs == v.rhs;
  return v;
}

ChainVerdict make_chain(std::vector<long long> terms) {
  ChainVerdict c;
  c.terms = std::move(terms);
  c.tight = true;
  for (std::size_t i = 0; i + 1 < c.terms.size(); ++i) {
    const bool ok = c.terms[i] <= c.terms[i + 1];
    c.links.push_back(ok);
    c.holds = c.holds && ok;
    c.tight = c.tight && c.terms[i] == c.terms[i + 1];
  }
  return c;
}

ChainVerdict doug_inequality(long long sum_excess, long long k_prime, long long l, Degree d) {
  if (l < 1) throw InputError("a nonempty collection has at least one limit set (l >= 1)");
  if (k_prime < l) throw InputError("k' must be at least l");
  const long long dd = d.value();
  return make_chain({sum_excess, k_prime - l, dd - 1 - l, dd - 2});
}

Rational default_limit_tolerance() { return Rational(1, 64); }

std::vector<CriticalLimitCandidate> detect_critical_limit_chords(const std::vector<Polygon>& polygons,
                                                                 Degree d, int horizon,
                                                                 const Rational& tol) {
  if (tol <= 0 || tol >= Rational(1, 2 * d.value())) {
    throw InputError("tolerance must lie in (0, 1/(2d))");
  }
  // Arc lengths live in [0, 1/2], so only targets k/d <= 1/2 are reachable.
  std::map<int, CriticalLimitCandidate> by_k;
  std::vector<int> order;
  std::vector<Polygon> cur = polygons;
  for (int n = 0; n <= horizon; ++n) {
    if (n > 0) {
      for (auto& p : cur) p = sigma(p, d);
    }
    for (const auto& p : cur) {
      for (const auto& c : p.boundary_chords()) {
        const Rational len = chord_arclength(c);
        for (int k = 1; 2 * k <= d.value(); ++k) {
          const Rational target(k, d.value());
          Rational gap = len - target;
          if (gap < 0) gap = -gap;
          if (gap > tol) continue;
          auto [it, inserted] = by_k.try_emplace(k, CriticalLimitCandidate{c, target, {}});
          if (inserted) order.push_back(k);
          auto& cand = it->second;
          if (!cand.evidence.empty()) {
            const auto best = std::min_element(cand.evidence.begin(), cand.evidence.end(),
                                               [](const Evidence& a, const Evidence& b) {
                                                 return a.gap < b.gap;
                                               });
            if (gap < best->gap) cand.chord = c;
          }
          cand.evidence.push_back({n, c, gap});
        }
      }
    }
  }
  std::vector<CriticalLimitCandidate> out;
  for (int k : order) out.push_back(std::move(by_k.at(k)));
  return out;
}

}  // namespace laminata::wander
