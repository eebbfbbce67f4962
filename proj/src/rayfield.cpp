#include "laminata/rayfield.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace laminata::ray {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

struct Iterate {
  cplx f;
  cplx df;
};

Iterate iterate(const Normalized& q, cplx w, int n) {
  Iterate r{w, cplx(1.0, 0.0)};
  for (int i = 0; i < n; ++i) {
    const auto [v, dv] = horner_d(q.coeffs, r.f);
    r.df *= dv;
    r.f = v;
  }
  return r;
}

/// Newton on g(w) = 0 given a callback returning (g, g').
template <typename F>
std::optional<cplx> newton_root(F&& g, cplx w, int max_iter = 200) {
  for (int it = 0; it < max_iter; ++it) {
    const auto [v, dv] = g(w);
    if (!finite(v) || !finite(dv) || dv == cplx(0.0, 0.0)) return std::nullopt;
    const cplx step = v / dv;
    w -= step;
    if (!finite(w)) return std::nullopt;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) return w;
  }
  return std::nullopt;
}

/// Continuation state for one external angle in normalized coordinates.
class Walker {
 public:
  Walker(const Normalized& q, const Angle& t, const RayParams& params)
      : q_(q), d_(q.degree), params_(params) {
    thetas_.push_back(t);
  }

  int stage(double level) const {
    int n = 0;
    double x = level;
    while (x < params_.newton_level && n < 4000) {
      x *= d_;
      ++n;
    }
    return n;
  }

  /// Solves Q^n(w) = exp(d^n level + 2 pi i frac(d^n t)) starting from w.
  bool solve(double level, cplx& w) {
    const int n = stage(level);
    const double rho = level * std::pow(static_cast<double>(d_), n);
    const double theta = theta_at(n);
    cplx z = w;
    for (int it = 0; it < 100; ++it) {
      const Iterate r = iterate(q_, z, n);
      if (!finite(r.f) || !finite(r.df) || r.f == cplx(0.0, 0.0) || r.df == cplx(0.0, 0.0)) {
        return false;
      }
      const double re = std::log(std::abs(r.f)) - rho;
      const double im = std::remainder(std::arg(r.f) - kTwoPi * theta, kTwoPi);
      const cplx diff(re, im);
      const cplx step = diff * r.f / r.df;
      z -= step;
      if (!finite(z)) return false;
      if (std::abs(diff) <= 1e-13 || std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) {
        w = z;
        return true;
      }
    }
    return false;
  }

 private:
  double theta_at(int n) {
    while (static_cast<int>(thetas_.size()) <= n) thetas_.push_back(sigma(thetas_.back(), Degree(d_)));
    return thetas_[n].to_double();
  }

  const Normalized& q_;
  int d_;
  const RayParams& params_;
  std::vector<Angle> thetas_;
};

struct Bracket {
  double level;
  int j;
  cplx c;  // normalized coordinates
};

}  // namespace

GreenValue green_level(const Normalized& q, cplx w, const GreenBudget& budget) {
  GreenValue g;
  const double d = q.degree;
  double scale = 1.0;
  for (int n = 0; n < budget.max_iterations; ++n) {
    const double r = std::abs(w);
    if (r > budget.escape_radius) {
      g.escape_iterations = n;
      // One extra iterate reduces the truncation error by another factor d.
      const cplx next = q(w);
      if (finite(next) && std::abs(next) < 1e100) {
        g.level = std::log(std::abs(next)) / (scale * d);
      } else {
        g.level = std::log(r) / scale;
      }
      return g;
    }
    w = q(w);
    scale *= d;
    if (!finite(w)) {
      g.escape_iterations = n + 1;
      g.level = 0.0;
      return g;
    }
  }
  g.escape_iterations = budget.max_iterations;
  return g;
}

GreenValue green_level(const PolySpec& p, cplx z, const GreenBudget& budget) {
  const Normalized q = normalize(p);
  return green_level(q, q.to_normal(z), budget);
}

std::vector<CriticalPoint> critical_points(const PolySpec& p, const GreenBudget& budget) {
  const auto dp = derivative(p.coefficients());
  const RootSet roots = aberth_roots(dp);
  std::vector<CriticalPoint> out;
  std::vector<bool> used(roots.roots.size(), false);
  for (std::size_t i = 0; i < roots.roots.size(); ++i) {
    if (used[i]) continue;
    CriticalPoint cp;
    cplx sum = roots.roots[i];
    cp.residual = roots.residuals[i];
    cp.residual_ok = roots.residuals[i] <= 1e-8 * roots.scales[i];
    for (std::size_t j = i + 1; j < roots.roots.size(); ++j) {
      if (!used[j] && std::abs(roots.roots[j] - roots.roots[i]) <= 1e-6 * (1.0 + std::abs(roots.roots[i]))) {
        used[j] = true;
        sum += roots.roots[j];
        ++cp.multiplicity;
        cp.residual = std::max(cp.residual, roots.residuals[j]);
        cp.residual_ok = cp.residual_ok && roots.residuals[j] <= 1e-8 * roots.scales[j];
      }
    }
    cp.z = sum / static_cast<double>(cp.multiplicity);
    cp.green = green_level(p, cp.z, budget);
    out.push_back(cp);
  }
  return out;
}

std::vector<CriticalPoint> escaping_criticals(const PolySpec& p, const GreenBudget& budget) {
  auto all = critical_points(p, budget);
  std::vector<CriticalPoint> out;
  for (auto& c : all) {
    if (c.green.level > 0.0) out.push_back(c);
  }
  std::stable_sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.green.level > b.green.level;
  });
  return out;
}

const char* to_string(RayStatus s) {
  switch (s) {
    case RayStatus::landed:
      return "landed";
    case RayStatus::non_smooth_suspect:
      return "non-smooth-suspect";
    case RayStatus::truncated:
      return "truncated";
  }
  return "?";
}

RayTrace trace_ray(const PolySpec& p, const Angle& t, const RayParams& params) {
  RayTrace tr;
  tr.angle = t;
  const Normalized q = normalize(p);
  const int d = q.degree;
  Walker walk(q, t, params);

  std::vector<Bracket> brackets;
  for (const auto& c : escaping_criticals(p, params.budget)) {
    double lvl = c.green.level;
    for (int j = 0; lvl >= params.min_level && j < 4000; ++j, lvl /= d) {
      if (lvl < params.start_level) brackets.push_back({lvl, j, q.to_normal(c.z)});
    }
  }
  std::sort(brackets.begin(), brackets.end(),
            [](const Bracket& a, const Bracket& b) { return a.level > b.level; });
  std::size_t next_bracket = 0;

  std::vector<cplx> ws;        // normalized points
  std::vector<std::size_t> grid;  // indices of regular grid points
  auto push = [&](cplx w, double level, bool regular) {
    ws.push_back(w);
    tr.points.push_back(q.from_normal(w));
    tr.levels.push_back(level);
    if (regular) grid.push_back(ws.size() - 1);
  };

  cplx w = std::polar(std::exp(params.start_level), kTwoPi * t.to_double());
  if (!walk.solve(params.start_level, w)) {
    tr.diagnostic = "Newton diverged at the start level";
    return tr;
  }
  push(w, params.start_level, true);

  bool cauchy = false;
  double prev_level = params.start_level;
  const int S = std::max(1, params.steps_per_stage);
  for (int k = 1;; ++k) {
    const double level = params.start_level * std::pow(params.shrink, -static_cast<double>(k) / S);
    if (level < params.min_level) break;

    while (next_bracket < brackets.size() && brackets[next_bracket].level >= level) {
      const Bracket b = brackets[next_bracket++];
      if (b.level >= prev_level) continue;
      for (int e = 1; e <= 12; ++e) {
        const double sub = b.level * (1.0 + std::pow(10.0, -e));
        if (sub >= prev_level) continue;
        cplx trial = w;
        if (!walk.solve(sub, trial)) break;
        w = trial;
        push(w, sub, false);
        prev_level = sub;
      }
      cplx zeta = b.c;
      if (b.j > 0) {
        auto g = [&](cplx z) {
          const Iterate r = iterate(q, z, b.j);
          return std::pair<cplx, cplx>{r.f - b.c, r.df};
        };
        const auto root = newton_root(g, w);
        if (!root) continue;
        zeta = *root;
      }
      const double dist = std::abs(q.from_normal(w) - q.from_normal(zeta));
      if (dist < params.precritical_radius) {
        tr.status = RayStatus::non_smooth_suspect;
        tr.near_precritical = q.from_normal(zeta);
        tr.flag_level = b.level;
        tr.label = b.j == 0 ? "critical-point" : "precritical(" + std::to_string(b.j) + ")";
        tr.diagnostic = "passes within " + std::to_string(dist) + " of a precritical point";
        return tr;
      }
    }

    cplx next = w;
    if (!walk.solve(level, next)) {
      tr.diagnostic = "Newton diverged at level " + std::to_string(level);
      return tr;
    }
    w = next;
    push(w, level, true);
    prev_level = level;
    if (static_cast<int>(tr.points.size()) >= params.max_points) {
      tr.diagnostic = "maximum point count reached";
      break;
    }
    const int tail = params.cauchy_tail;
    if (static_cast<int>(grid.size()) > tail) {
      bool all_close = true;
      for (int i = 0; i < tail && all_close; ++i) {
        const std::size_t a = grid[grid.size() - 1 - i];
        const std::size_t b = grid[grid.size() - 2 - i];
        all_close = std::abs(tr.points[a] - tr.points[b]) < params.landing_tolerance;
      }
      if (all_close) {
        cauchy = true;
        break;
      }
    }
  }

  if (params.refine_landing && grid.size() >= 2) {
    const OrbitInfo oi = orbit_info(t, Degree(d));
    auto g = [&](cplx z) {
      const Iterate a = iterate(q, z, oi.preperiod);
      const Iterate b = iterate(q, a.f, oi.period);
      return std::pair<cplx, cplx>{b.f - a.f, b.df * a.df - a.df};
    };
    const std::size_t span = static_cast<std::size_t>(2 * S);
    const cplx last = ws[grid.back()];
    const cplx earlier = ws[grid[grid.size() > span ? grid.size() - 1 - span : 0]];
    const auto ra = newton_root(g, last);
    const auto rb = newton_root(g, earlier);
    if (ra && rb) {
      const cplx za = q.from_normal(*ra);
      const double agree = std::abs(za - q.from_normal(*rb));
      const double mult = std::abs(iterate(q, iterate(q, *ra, oi.preperiod).f, oi.period).df);
      const double reach = std::abs(q.from_normal(last) - q.from_normal(earlier));
      const double gap = std::abs(za - q.from_normal(last));
      if (agree <= params.landing_tolerance && mult > 1.0 + 1e-9 &&
          gap <= 50.0 * reach + params.landing_tolerance) {
        tr.status = RayStatus::landed;
        tr.refined = true;
        tr.landing = za;
        tr.residual = agree;
        if (tr.levels.back() > 0.0) {
          ws.push_back(*ra);
          tr.points.push_back(za);
          tr.levels.push_back(0.0);
        }
        return tr;
      }
    }
  }

  if (cauchy) {
    tr.status = RayStatus::landed;
    tr.landing = tr.points.back();
    double worst = 0.0;
    for (int i = 0; i < params.cauchy_tail; ++i) {
      worst = std::max(worst, std::abs(tr.points[grid[grid.size() - 1 - i]] -
                                       tr.points[grid[grid.size() - 2 - i]]));
    }
    tr.residual = worst;
    return tr;
  }
  tr.status = RayStatus::truncated;
  if (tr.diagnostic.empty()) tr.diagnostic = "minimum level reached before landing";
  return tr;
}

std::vector<CoLandingGroup> co_landing_groups(const std::vector<RayTrace>& traces, double tol) {
  std::vector<const RayTrace*> landed;
  for (const auto& t : traces) {
    if (t.status == RayStatus::landed) landed.push_back(&t);
  }
  std::vector<std::size_t> parent(landed.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < landed.size(); ++i) {
    for (std::size_t j = i + 1; j < landed.size(); ++j) {
      if (std::abs(landed[i]->landing - landed[j]->landing) <= tol) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<const RayTrace*>> clusters;
  for (std::size_t i = 0; i < landed.size(); ++i) clusters[find(i)].push_back(landed[i]);

  std::vector<CoLandingGroup> out;
  for (auto& [root, members] : clusters) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end(),
              [](const RayTrace* a, const RayTrace* b) { return a->angle < b->angle; });
    CoLandingGroup g;
    cplx sum(0.0, 0.0);
    for (const auto* m : members) {
      g.angles.push_back(m->angle);
      sum += m->landing;
    }
    g.landing_point = sum / static_cast<double>(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        g.spread = std::max(g.spread, std::abs(members[i]->landing - members[j]->landing));
      }
    }
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(),
            [](const CoLandingGroup& a, const CoLandingGroup& b) { return a.angles < b.angles; });
  return out;
}

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LAMINATA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<int>(v);
  }
  return std::max(1, n);
}

std::vector<RayTrace> trace_rays(const PolySpec& p, const std::vector<Angle>& angles,
                                 const RayParams& params, int threads) {
  std::vector<RayTrace> out(angles.size());
  auto work = [&](std::size_t i) {
    try {
      out[i] = trace_ray(p, angles[i], params);
    } catch (const std::exception& e) {
      out[i] = RayTrace{};
      out[i].angle = angles[i];
      out[i].diagnostic = e.what();
    }
  };
  if (threads <= 0) threads = worker_count();
  const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(threads), angles.size());
  if (n_workers <= 1) {
    for (std::size_t i = 0; i < angles.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < n_workers; ++k) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < angles.size(); i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

SampledLamination sample_lamination(const PolySpec& p, long long q, const RayParams& params,
                                    double colanding_tol, int threads) {
  if (q < 1) throw InputError("denominator bound must be positive");
  SampledLamination s;
  s.degree = p.degree();
  s.q = q;
  s.advisory = !escaping_criticals(p, params.budget).empty();

  std::vector<Angle> angles;
  for (long long k = 0; k < q; ++k) angles.emplace_back(k, q);
  s.traces = trace_rays(p, angles, params, threads);
  for (const auto& t : s.traces) {
    if (t.status != RayStatus::landed) {
      s.failures.push_back(t.angle.str() + ": " + to_string(t.status) +
                           (t.diagnostic.empty() ? "" : " (" + t.diagnostic + ")"));
    }
  }
  s.groups = co_landing_groups(s.traces, colanding_tol);

  std::set<Chord> chords;
  for (const auto& g : s.groups) {
    for (const auto& c : Polygon(g.angles).boundary_chords()) chords.insert(c);
  }
  s.chords.assign(chords.begin(), chords.end());
  s.artifacts = lam::validate_prelamination(s.chords, Degree(s.degree)).violations;
  return s;
}

std::vector<cplx> trace_equipotential(const PolySpec& p, double level, int samples, const RayParams& params) {
  if (samples < 3) throw InputError("equipotential needs at least 3 samples");
  if (!(level > 0.0) || level > 500.0) throw InputError("equipotential level must lie in (0, 500]");
  for (const auto& c : escaping_criticals(p, params.budget)) {
    if (level <= c.green.level) {
      throw InputError("level at or below an escaping critical level is not supported");
    }
  }
  const Normalized q = normalize(p);
  const double top = std::max(level, params.start_level);
  const int S = std::max(1, params.steps_per_stage);
  std::vector<cplx> out;
  for (int k = 0; k < samples; ++k) {
    const Angle t(k, samples);
    Walker walk(q, t, params);
    cplx w = std::polar(std::exp(top), kTwoPi * t.to_double());
    bool ok = walk.solve(top, w);
    for (int j = 1; ok; ++j) {
      const double l = top * std::pow(params.shrink, -static_cast<double>(j) / S);
      if (l <= level) break;
      ok = walk.solve(l, w);
    }
    if (ok) ok = walk.solve(level, w);
    if (!ok) throw std::runtime_error("equipotential continuation failed at angle " + t.str());
    out.push_back(q.from_normal(w));
  }
  return out;
}

}  // namespace laminata::ray
