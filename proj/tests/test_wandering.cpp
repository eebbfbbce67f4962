#include <algorithm>
#include <climits>

#include "doctest.h"
#include "laminata/wandering.hpp"
#include "oracles.hpp"

using namespace laminata;
using namespace laminata::wander;

namespace {

Polygon P(const char* s) { return Polygon::parse(s); }

// Upper bound on the failing step for rational input: max(preperiod + period) + lcm(periods).
long long rational_bound(const std::vector<oracle::Frac>& angles, int d) {
  long long worst = 0;
  std::vector<int> periods;
  for (const auto& f : angles) {
    const auto [pre, per] = oracle::orbit(f, d);
    worst = std::max<long long>(worst, pre + per);
    periods.push_back(per);
  }
  return worst + oracle::lcm_all(periods);
}

std::vector<oracle::Frac> random_set(std::mt19937_64& rng, int size, long long max_den) {
  std::vector<oracle::Frac> out;
  while (static_cast<int>(out.size()) < size) {
    const long long q = 2 + static_cast<long long>(rng() % static_cast<unsigned long long>(max_den - 1));
    const auto f = oracle::reduce(static_cast<long long>(rng() % static_cast<unsigned long long>(q)), q);
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

Polygon to_polygon(const std::vector<oracle::Frac>& fs) {
  std::vector<Angle> v;
  for (const auto& f : fs) v.emplace_back(f.p, f.q);
  return Polygon(v);
}

}  // namespace

TEST_CASE("check_wandering examples") {
  const auto a = check_wandering({P("1/5,2/5")}, Degree(2), 10);
  CHECK_FALSE(a.wandering);
  CHECK(a.failed_step == 1);
  CHECK(a.reason == FailureReason::vertex_collision);
  CHECK(a.status_str() == "failed(step 1, vertex-collision)");

  // The triangle's first image is itself, so the collision already shows at step 1.
  const auto b = check_wandering({P("1/7,2/7,4/7")}, Degree(2), 10);
  CHECK_FALSE(b.wandering);
  CHECK(b.failed_step >= 1);
  CHECK(b.failed_step <= 3);
  CHECK(b.reason == FailureReason::vertex_collision);

  const auto c = check_wandering({P("1/4,1/2")}, Degree(2), 2);
  CHECK_FALSE(c.wandering);
  CHECK(c.failed_step <= 2);
  CHECK(c.reason == FailureReason::vertex_collision);

  const auto e = check_wandering({}, Degree(2), 10);
  CHECK(e.wandering);
  CHECK(e.status_str() == "wandering-up-to(10)");
}

TEST_CASE("check_wandering reports linked images and criticality") {
  const auto linked = check_wandering({P("0,1/3"), P("1/6,1/2")}, Degree(2), 5);
  CHECK_FALSE(linked.wandering);
  CHECK(linked.failed_step == 0);
  CHECK(linked.reason == FailureReason::linked_images);

  const auto crit = check_wandering({P("1/6,2/3")}, Degree(2), 5);
  CHECK_FALSE(crit.wandering);
  CHECK(crit.failed_step == 0);
  CHECK(crit.reason == FailureReason::criticality);
}

TEST_CASE("check_wandering survives a short horizon") {
  const auto w = check_wandering({P("236/1023,238/1023,353/1023")}, Degree(2), 3);
  CHECK(w.wandering);
  CHECK(w.status_str() == "wandering-up-to(3)");
}

TEST_CASE("kiwi_bound_check examples") {
  const auto a = kiwi_bound_check(P("1/7,2/7,4/7"), Degree(3));
  CHECK(a.within_kiwi);
  CHECK(a.within_general);
  CHECK_FALSE(a.rejected());

  const auto b = kiwi_bound_check(P("0,1/5,2/5,3/5"), Degree(3));
  CHECK_FALSE(b.within_kiwi);
  CHECK(b.within_general);
  CHECK(b.rejected());
  CHECK(b.general_bound == 8);

  const auto c = kiwi_bound_check(P("0,1/5,2/5,3/5,4/5"), Degree(2));
  CHECK_FALSE(c.within_kiwi);
  CHECK_FALSE(c.within_general);
}

TEST_CASE("blolev_inequality examples") {
  const auto a = blolev_inequality({{3}, 0, 3});
  CHECK(a.lhs == 1);
  CHECK(a.rhs == 1);
  CHECK(a.holds);
  CHECK(a.equality);

  const auto b = blolev_inequality({{3, 3}, 0, 3});
  CHECK(b.lhs == 2);
  CHECK_FALSE(b.holds);

  const auto c = blolev_inequality({{4}, 1, 5});
  CHECK(c.lhs == 3);
  CHECK(c.rhs == 3);
  CHECK(c.holds);

  CHECK_THROWS_AS(blolev_inequality({{2}, 0, 3}), InputError);
}

TEST_CASE("doug_inequality examples") {
  const auto a = doug_inequality(1, 2, 1, Degree(3));
  CHECK(a.terms == std::vector<long long>{1, 1, 1, 1});
  CHECK(a.holds);
  CHECK(a.tight);

  const auto b = doug_inequality(2, 2, 1, Degree(3));
  CHECK_FALSE(b.holds);
  REQUIRE(b.links.size() == 3);
  CHECK_FALSE(b.links[0]);
  CHECK(b.links[1]);

  const auto c = doug_inequality(0, 1, 1, Degree(2));
  CHECK(c.terms == std::vector<long long>{0, 0, 0, 0});
  CHECK(c.holds);

  CHECK_THROWS_AS(doug_inequality(0, 1, 0, Degree(2)), InputError);
  CHECK_THROWS_AS(doug_inequality(0, 1, 2, Degree(3)), InputError);
}

TEST_CASE("detect_critical_limit_chords examples") {
  const Rational tol(1, 100);
  CHECK(detect_critical_limit_chords({P("1/7,2/7,4/7")}, Degree(2), 10, tol).empty());

  const auto near = detect_critical_limit_chords({P("0,499/1000")}, Degree(2), 1, tol);
  REQUIRE(near.size() == 1);
  CHECK(near[0].k_over_d == Rational(1, 2));
  CHECK(near[0].evidence.at(0).step == 0);
  CHECK(near[0].evidence.at(0).gap == Rational(1, 1000));

  CHECK(detect_critical_limit_chords({}, Degree(2), 10, tol).empty());
  CHECK(default_limit_tolerance() == Rational(1, 64));
  CHECK_THROWS_AS(detect_critical_limit_chords({}, Degree(2), 10, Rational(1, 4)), InputError);
  CHECK_THROWS_AS(detect_critical_limit_chords({}, Degree(2), 10, Rational(0)), InputError);
}

TEST_CASE("property: rational collections fail within the orbit bound") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const int size = 2 + static_cast<int>(rng() % 4);
    const auto fs = random_set(rng, size, 1000);
    const long long bound = rational_bound(fs, d);
    const int horizon = static_cast<int>(std::min<long long>(bound, INT_MAX / 2));
    const auto cert = check_wandering({to_polygon(fs)}, Degree(d), horizon);
    CHECK_FALSE(cert.wandering);
    CHECK(cert.failed_step <= bound);
  }
}

TEST_CASE("property: no wandering triangle for random quadratic triples") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 200; ++i) {
    const auto fs = random_set(rng, 3, 10000);
    const long long bound = rational_bound(fs, 2);
    const auto cert = check_wandering({to_polygon(fs)}, Degree(2),
                                      static_cast<int>(std::min<long long>(bound, INT_MAX / 2)));
    CHECK_FALSE(cert.wandering);
  }
}

TEST_CASE("property: certificates are monotone in the horizon") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const auto fs = random_set(rng, 3, 500);
    const Polygon p = to_polygon(fs);
    const auto full = check_wandering({p}, Degree(2), 40);
    for (int k = 0; k <= 40; k += 5) {
      const auto part = check_wandering({p}, Degree(2), k);
      if (full.wandering) {
        CHECK(part.wandering);
      } else {
        CHECK(part.wandering == (k < full.failed_step));
        if (!part.wandering) {
          CHECK(part.failed_step == full.failed_step);
          CHECK(part.reason == full.reason);
        }
      }
    }
  }
}

TEST_CASE("property: counting verdicts are pure arithmetic") {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 300; ++i) {
    const int d = 2 + static_cast<int>(rng() % 5);
    std::vector<int> sizes;
    const int n = static_cast<int>(rng() % 4);
    long long excess = 0;
    for (int k = 0; k < n; ++k) {
      sizes.push_back(3 + static_cast<int>(rng() % 4));
      excess += sizes.back() - 2;
    }
    const int np = static_cast<int>(rng() % 3);
    const auto v = blolev_inequality({sizes, np, d});
    CHECK(v.lhs == excess + np);
    CHECK(v.rhs == d - 2);
    CHECK(v.holds == (excess + np <= d - 2));
    const auto again = blolev_inequality({sizes, np, d});
    CHECK(again.holds == v.holds);

    const long long l = 1 + static_cast<long long>(rng() % 3);
    const long long kp = l + static_cast<long long>(rng() % 3);
    const auto c = doug_inequality(excess, kp, l, Degree(d));
    CHECK(c.terms == std::vector<long long>{excess, kp - l, d - 1 - l, d - 2});
    CHECK(c.holds == (excess <= kp - l && kp - l <= d - 1 - l && d - 1 - l <= d - 2));
  }
}
