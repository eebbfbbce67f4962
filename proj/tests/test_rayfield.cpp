#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "laminata/rayfield.hpp"
#include "oracles.hpp"

using namespace laminata;
using namespace laminata::ray;

namespace {

PolySpec quadratic(cplx c) { return PolySpec({1.0, 0.0, c}); }

const cplx kRabbit(-0.12256116687665, 0.74486176661974);

// Plain escape-rate estimate for z^2 + c: iterate until huge, then log|z| / 2^n.
double oracle_green(cplx c, cplx z) {
  for (int n = 0; n < 4000; ++n) {
    if (std::abs(z) > 1e100) return std::log(std::abs(z)) / std::pow(2.0, n);
    z = z * z + c;
  }
  return 0.0;
}

double wrap_turn(double x) {
  x -= std::round(x);
  return x;
}

}  // namespace

TEST_CASE("PolySpec rejects bad coefficients") {
  CHECK_THROWS_AS(PolySpec({1.0, 0.0}), InputError);
  CHECK_THROWS_AS(PolySpec({0.0, 1.0, 0.0}), InputError);
  CHECK_THROWS_AS(PolySpec({1.0, NAN, 0.0}), InputError);
  CHECK(PolySpec({1.0, 0.0, 0.0}).degree() == 2);
}

TEST_CASE("normalize conjugates to a monic centered polynomial") {
  const PolySpec p({cplx(2.0, 1.0), cplx(0.5, -1.0), cplx(3.0, 0.0), cplx(-1.0, 2.0)});
  const Normalized q = normalize(p);
  CHECK(std::abs(q.coeffs[0] - 1.0) < 1e-12);
  CHECK(std::abs(q.coeffs[1]) < 1e-12);
  for (cplx z : {cplx(0.3, 0.2), cplx(-1.0, 0.5), cplx(2.0, -2.0)}) {
    const cplx lhs = q(q.to_normal(z));
    const cplx rhs = q.to_normal(p(z));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    CHECK(std::abs(q.from_normal(q.to_normal(z)) - z) < 1e-12);
  }
}

TEST_CASE("aberth_roots finds known roots") {
  const RootSet r = aberth_roots({1.0, 0.0, -1.0});
  REQUIRE(r.roots.size() == 2);
  CHECK(std::abs(r.roots[0] - cplx(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(r.roots[1] - cplx(1.0, 0.0)) < 1e-12);

  const RootSet u = aberth_roots({1.0, 0.0, 0.0, 0.0, -1.0});
  REQUIRE(u.roots.size() == 4);
  for (const auto& z : u.roots) CHECK(std::abs(z * z * z * z - 1.0) < 1e-12);
}

TEST_CASE("green_level examples") {
  const PolySpec z2 = quadratic(0.0);
  CHECK(std::abs(green_level(z2, 2.0).level - std::log(2.0)) < 1e-8);
  CHECK(green_level(z2, 0.5).level == 0.0);
  CHECK(green_level(z2, 1.0).level == 0.0);

  const PolySpec cubic({1.0, 0.0, 0.0, 0.0});
  CHECK(std::abs(green_level(cubic, 3.0).level - std::log(3.0)) < 1e-8);
}

TEST_CASE("green_level agrees with a direct escape-rate estimate") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (cplx c : {cplx(0.0, 0.0), cplx(-1.0, 0.0), cplx(1.0, 0.0), kRabbit, cplx(0.3, 0.6)}) {
    const PolySpec p = quadratic(c);
    for (int i = 0; i < 50; ++i) {
      const cplx z(u(rng), u(rng));
      const double want = oracle_green(c, z);
      const double got = green_level(p, z).level;
      if (want == 0.0) {
        CHECK(got < 1e-6);
      } else {
        CHECK(std::abs(got - want) < 1e-8);
      }
    }
  }
}

TEST_CASE("property: green level is multiplied by d under P") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const PolySpec p({cplx(1.0, 0.5), 0.0, cplx(0.2, 0.1), cplx(-0.4, 0.3)});
  for (int i = 0; i < 100; ++i) {
    const cplx z(u(rng), u(rng));
    const double g = green_level(p, z).level;
    if (g < 1e-3) continue;
    CHECK(std::abs(green_level(p, p(z)).level - 3.0 * g) < 1e-8 * (1.0 + g));
  }
}

TEST_CASE("critical_points examples") {
  const auto basilica = critical_points(quadratic(-1.0));
  REQUIRE(basilica.size() == 1);
  CHECK(std::abs(basilica[0].z) < 1e-12);
  CHECK(basilica[0].green.level == 0.0);
  CHECK(escaping_criticals(quadratic(-1.0)).empty());

  const auto cube = critical_points(PolySpec({1.0, 0.0, 0.0, 0.0}));
  REQUIRE(cube.size() == 1);
  CHECK(cube[0].multiplicity == 2);
  CHECK(escaping_criticals(PolySpec({1.0, 0.0, 0.0, 0.0})).empty());

  const auto esc = escaping_criticals(quadratic(1.0));
  REQUIRE(esc.size() == 1);
  CHECK(std::abs(esc[0].green.level - oracle_green(1.0, 0.0)) < 1e-8);
  CHECK(esc[0].residual_ok);
}

TEST_CASE("rays of z^2 are radial and land on the unit circle") {
  const PolySpec z2 = quadratic(0.0);
  for (int k = 0; k < 8; ++k) {
    const Angle t(k, 8);
    const RayTrace r = trace_ray(z2, t);
    REQUIRE(r.status == RayStatus::landed);
    double dev = 0.0;
    for (const auto& z : r.points) {
      dev = std::max(dev, std::abs(wrap_turn(std::arg(z) / (2.0 * std::numbers::pi) - t.to_double())));
    }
    CHECK(dev < 1e-9);
    const cplx target = std::polar(1.0, 2.0 * std::numbers::pi * t.to_double());
    CHECK(std::abs(r.landing - target) < 1e-6);
    for (std::size_t i = 1; i < r.levels.size(); ++i) CHECK(r.levels[i] < r.levels[i - 1]);
  }
}

TEST_CASE("basilica rays 1/3 and 2/3 land at the alpha fixed point") {
  const PolySpec p = quadratic(-1.0);
  const cplx alpha = oracle::alpha_fixed_point(-1.0);
  for (const Angle& t : {Angle(1, 3), Angle(2, 3)}) {
    const RayTrace r = trace_ray(p, t);
    REQUIRE(r.status == RayStatus::landed);
    CHECK(std::abs(r.landing - alpha) < 1e-9);
  }
}

TEST_CASE("rabbit rays 1/7, 2/7, 4/7 land at the alpha fixed point") {
  const PolySpec p = quadratic(kRabbit);
  const cplx alpha = oracle::alpha_fixed_point(kRabbit);
  const auto traces = trace_rays(p, {Angle(1, 7), Angle(2, 7), Angle(4, 7)});
  for (const auto& r : traces) {
    REQUIRE(r.status == RayStatus::landed);
    CHECK(std::abs(r.landing - alpha) < 1e-6);
  }
  const auto groups = co_landing_groups(traces, 1e-6);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].angles == std::vector<Angle>{Angle(1, 7), Angle(2, 7), Angle(4, 7)});
}

TEST_CASE("co_landing_groups examples") {
  std::vector<RayTrace> ts(4);
  ts[0].angle = Angle(1, 3);
  ts[0].status = RayStatus::landed;
  ts[0].landing = {0.0, 0.0};
  ts[1].angle = Angle(2, 3);
  ts[1].status = RayStatus::landed;
  ts[1].landing = {5e-7, 0.0};
  ts[2].angle = Angle(0, 1);
  ts[2].status = RayStatus::landed;
  ts[2].landing = {1.0, 0.0};
  ts[3].angle = Angle(1, 2);
  ts[3].status = RayStatus::truncated;
  ts[3].landing = {1.0, 0.0};
  const auto g = co_landing_groups(ts, 1e-6);
  REQUIRE(g.size() == 1);
  CHECK(g[0].angles == std::vector<Angle>{Angle(1, 3), Angle(2, 3)});
  CHECK(std::abs(g[0].spread - 5e-7) < 1e-15);
  CHECK(co_landing_groups({}, 1e-6).empty());
}

TEST_CASE("sample_lamination examples") {
  const auto z2 = sample_lamination(quadratic(0.0), 8);
  CHECK(z2.chords.empty());
  CHECK(z2.failures.empty());
  CHECK(z2.traces.size() == 8);

  const auto rabbit = sample_lamination(quadratic(kRabbit), 7);
  const std::vector<Chord> want{Chord(Angle(1, 7), Angle(2, 7)), Chord(Angle(1, 7), Angle(4, 7)),
                                Chord(Angle(2, 7), Angle(4, 7))};
  CHECK(rabbit.chords == want);
  CHECK(rabbit.artifacts.empty());
  CHECK_FALSE(rabbit.advisory);
}

TEST_CASE("equipotential examples") {
  const auto circle = trace_equipotential(quadratic(0.0), std::log(2.0), 64);
  REQUIRE(circle.size() == 64);
  for (const auto& z : circle) CHECK(std::abs(std::abs(z) - 2.0) < 1e-9);

  const auto basilica = trace_equipotential(quadratic(-1.0), 0.5, 128);
  double winding = 0.0;
  for (std::size_t i = 0; i < basilica.size(); ++i) {
    const cplx a = basilica[i], b = basilica[(i + 1) % basilica.size()];
    winding += std::arg(b / a);
  }
  CHECK(std::abs(winding / (2.0 * std::numbers::pi) - 1.0) < 1e-9);
  for (const auto& z : basilica) CHECK(std::abs(green_level(quadratic(-1.0), z).level - 0.5) < 1e-8);

  CHECK_THROWS_AS(trace_equipotential(quadratic(1.0), 0.1, 64), InputError);
  CHECK_THROWS_AS(trace_equipotential(quadratic(0.0), 1.0, 2), InputError);
  CHECK_THROWS_AS(trace_equipotential(quadratic(0.0), -1.0, 16), InputError);
}

TEST_CASE("property: rays are mapped to rays with the level multiplied by d") {
  const PolySpec p = quadratic(kRabbit);
  std::mt19937_64 rng(53);
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    const long long q = 3 + static_cast<long long>(rng() % 30);
    const Angle t(static_cast<long long>(rng() % static_cast<unsigned long long>(q)), q);
    const RayTrace a = trace_ray(p, t);
    const RayTrace b = trace_ray(p, sigma(t, Degree(2)));
    for (std::size_t k = 0; k < a.levels.size(); k += 7) {
      if (a.levels[k] <= 0.0) continue;
      const double want = 2.0 * a.levels[k];
      const auto it = std::find_if(b.levels.begin(), b.levels.end(),
                                   [&](double l) { return std::abs(l - want) <= 1e-12 * want; });
      if (it == b.levels.end()) continue;
      const cplx image = b.points[static_cast<std::size_t>(it - b.levels.begin())];
      CHECK(std::abs(p(a.points[k]) - image) <= 1e-8 * (1.0 + std::abs(image)));
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("parallel tracing matches sequential tracing") {
  const PolySpec p = quadratic(kRabbit);
  std::vector<Angle> angles;
  for (int k = 0; k < 15; ++k) angles.emplace_back(k, 15);
  const auto seq = trace_rays(p, angles, {}, 1);
  const auto par = trace_rays(p, angles, {}, 4);
  REQUIRE(seq.size() == par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].angle == angles[i]);
    CHECK(par[i].angle == angles[i]);
    CHECK(seq[i].points == par[i].points);
    CHECK(seq[i].status == par[i].status);
  }
}

TEST_CASE("rays through escaping critical points are flagged") {
  const PolySpec p = quadratic(1.0);
  const RayTrace zero = trace_ray(p, Angle(0, 1));
  CHECK(zero.status == RayStatus::non_smooth_suspect);
  CHECK(zero.label == "critical-point");
  CHECK(std::abs(zero.near_precritical) < 1e-4);

  const RayTrace quarter = trace_ray(p, Angle(1, 4));
  CHECK(quarter.status == RayStatus::non_smooth_suspect);
  CHECK(quarter.label == "precritical(1)");

  const auto s = sample_lamination(p, 4);
  CHECK(s.advisory);
}
