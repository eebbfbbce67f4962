#include "doctest.h"
#include "laminata/circle.hpp"
#include "oracles.hpp"

using namespace laminata;

namespace {

Angle A(const char* s) { return Angle::parse(s); }
Chord C(const char* a, const char* b) { return Chord(A(a), A(b)); }
Angle from(oracle::Frac f) { return Angle(f.p, f.q); }

}  // namespace

TEST_CASE("angle parsing and normalization") {
  CHECK(A("2/4") == Angle(1, 2));
  CHECK(A("0") == Angle(0, 1));
  CHECK(A("0/1").str() == "0/1");
  CHECK(Angle(9, 7) == Angle(2, 7));
  CHECK(Angle(-1, 3) == Angle(2, 3));
  CHECK_THROWS_AS(A("7/6"), InputError);
  CHECK_THROWS_AS(A("1/0"), InputError);
  CHECK_THROWS_AS(A("-1/3"), InputError);
  CHECK_THROWS_AS(A("1/3x"), InputError);
  CHECK_THROWS_AS(A(""), InputError);
  CHECK_THROWS_AS(Degree(1), InputError);
}

TEST_CASE("sigma examples") {
  CHECK(sigma(A("1/7"), Degree(2)) == A("2/7"));
  CHECK(sigma(A("0/1"), Degree(5)) == A("0/1"));
  CHECK(sigma(A("9/14"), Degree(2)) == A("2/7"));
  CHECK(sigma_n(A("1/7"), Degree(2), 3) == A("1/7"));
}

TEST_CASE("preimages examples") {
  CHECK(preimages(A("0"), Degree(2)) == std::vector<Angle>{A("0"), A("1/2")});
  CHECK(preimages(A("1/7"), Degree(2)) == std::vector<Angle>{A("1/14"), A("4/7")});
  CHECK(preimages(A("2/3"), Degree(3)) == std::vector<Angle>{A("2/9"), A("5/9"), A("8/9")});
}

TEST_CASE("orbit_info examples") {
  CHECK(orbit_info(A("1/7"), Degree(2)) == OrbitInfo{0, 3});
  CHECK(orbit_info(A("1/2"), Degree(2)) == OrbitInfo{1, 1});
  CHECK(orbit_info(A("1/12"), Degree(2)) == OrbitInfo{2, 2});
}

TEST_CASE("chords_cross examples") {
  CHECK(chords_cross(C("0", "1/2"), C("1/4", "3/4")));
  CHECK_FALSE(chords_cross(C("1/7", "2/7"), C("4/7", "9/14")));
  CHECK_FALSE(chords_cross(C("0", "1/3"), C("1/3", "2/3")));
  CHECK_FALSE(chords_cross(C("1/3", "1/3"), C("0", "1/2")));
}

TEST_CASE("sets_unlinked examples") {
  const Polygon tri = Polygon::parse("1/7,2/7,4/7");
  CHECK(sets_unlinked(tri, Polygon::parse("9/14,11/14,1/14")));
  CHECK_FALSE(sets_unlinked(Polygon::parse("0,1/2"), Polygon::parse("1/4,3/4")));
  CHECK(sets_unlinked(tri, tri));
}

TEST_CASE("chord_arclength examples") {
  CHECK(chord_arclength(C("1/7", "2/7")) == Rational(1, 7));
  CHECK(chord_arclength(C("0", "1/2")) == Rational(1, 2));
  CHECK(chord_arclength(C("1/7", "6/7")) == Rational(2, 7));
  CHECK(chord_arclength(C("1/5", "1/5")) == 0);
}

TEST_CASE("is_critical_chord examples") {
  CHECK(is_critical_chord(C("0", "1/2"), Degree(2)));
  CHECK_FALSE(is_critical_chord(C("1/7", "2/7"), Degree(2)));
  CHECK(is_critical_chord(C("1/12", "3/4"), Degree(3)));
  CHECK_THROWS_AS(is_critical_chord(C("1/3", "1/3"), Degree(2)), InputError);
}

TEST_CASE("is_recurrent_chord examples") {
  CHECK(is_recurrent_chord(C("1/7", "1/2"), Degree(2)));
  CHECK_FALSE(is_recurrent_chord(C("1/2", "1/4"), Degree(2)));
  CHECK(is_recurrent_chord(C("1/3", "1/6"), Degree(2)));
}

TEST_CASE("polygon canonical form") {
  const Polygon p = Polygon::parse("4/7,1/7,2/7");
  CHECK(p.str() == "1/7,2/7,4/7");
  CHECK(p.boundary_chords().size() == 3);
  CHECK(Polygon::parse("0,1/2").boundary_chords().size() == 1);
  CHECK(Polygon::parse("1/3").boundary_chords().empty());
  CHECK_THROWS_AS(Polygon::parse("1/3,1/3"), InputError);
  CHECK_THROWS_AS(Polygon(std::vector<Angle>{}), InputError);
  CHECK(sigma(Polygon::parse("0,1/4,1/2,3/4"), Degree(2)) == Polygon::parse("0,1/2"));
}

// Property tests with a fixed-seed generator of small rationals.

namespace {

oracle::Frac random_frac(std::mt19937_64& rng, long long max_den) {
  std::uniform_int_distribution<long long> den(1, max_den);
  const long long q = den(rng);
  std::uniform_int_distribution<long long> num(0, q - 1);
  return oracle::reduce(num(rng), q);
}

}  // namespace

TEST_CASE("property: preimages map back and number exactly d") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto f = random_frac(rng, 200);
    const int d = 2 + static_cast<int>(rng() % 5);
    const auto pre = preimages(from(f), Degree(d));
    REQUIRE(pre.size() == static_cast<std::size_t>(d));
    for (const auto& x : pre) CHECK(sigma(x, Degree(d)) == from(f));
  }
}

TEST_CASE("property: orbit_info matches brute force, preperiod 0 iff gcd(q, d) = 1") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto f = random_frac(rng, 300);
    const int d = 2 + static_cast<int>(rng() % 4);
    const auto [pre, per] = oracle::orbit(f, d);
    const OrbitInfo info = orbit_info(from(f), Degree(d));
    CHECK(info.preperiod == pre);
    CHECK(info.period == per);
    long long q = f.q;
    long long g;
    while ((g = std::gcd(q, static_cast<long long>(d))) > 1) q /= g;
    CHECK((pre == 0) == (q == f.q));
  }
}

TEST_CASE("property: chords_cross agrees with segment intersection, symmetric, irreflexive") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 3000; ++i) {
    const oracle::Frac a = random_frac(rng, 50), b = random_frac(rng, 50);
    const oracle::Frac c = random_frac(rng, 50), d = random_frac(rng, 50);
    const Chord p(from(a), from(b));
    const Chord q(from(c), from(d));
    const bool shared = a == c || a == d || b == c || b == d;
    if (shared) {
      CHECK_FALSE(chords_cross(p, q));
    } else {
      CHECK(chords_cross(p, q) == oracle::segments_cross(a, b, c, d));
    }
    CHECK(chords_cross(p, q) == chords_cross(q, p));
    CHECK_FALSE(chords_cross(p, p));
  }
}

TEST_CASE("property: image length is the fold of d times the length") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_frac(rng, 120), b = random_frac(rng, 120);
    if (a == b) continue;
    const int d = 2 + static_cast<int>(rng() % 3);
    const Chord c(from(a), from(b));
    if (is_critical_chord(c, Degree(d))) continue;
    const Rational L = chord_arclength(c);
    Rational x = L * d;
    x -= Rational(static_cast<long long>(boost::multiprecision::numerator(x) /
                                         boost::multiprecision::denominator(x)));
    const Rational fold = x < Rational(1, 2) ? x : Rational(1) - x;
    CHECK(chord_arclength(sigma(c, Degree(d))) == fold);
    if (L > 0 && L < Rational(1, d + 1)) CHECK(fold > L);
  }
}

TEST_CASE("property: sets_unlinked is symmetric") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 400; ++i) {
    std::vector<Angle> va, vb;
    for (int k = 0; k < 3; ++k) va.push_back(from(random_frac(rng, 30)));
    for (int k = 0; k < 3; ++k) vb.push_back(from(random_frac(rng, 30)));
    const Polygon a = Polygon::merged(va), b = Polygon::merged(vb);
    CHECK(sets_unlinked(a, b) == sets_unlinked(b, a));
  }
}
