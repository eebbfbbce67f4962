#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "laminata/angle.hpp"

namespace laminata {

/// Unordered pair of angles; stored with lo() <= hi(). Degenerate when both coincide.
class Chord {
 public:
  Chord(Angle a, Angle b);

  const Angle& lo() const { return lo_; }
  const Angle& hi() const { return hi_; }
  bool degenerate() const { return lo_ == hi_; }
  bool has_endpoint(const Angle& x) const { return lo_ == x || hi_ == x; }
  std::string str() const;

  friend bool operator==(const Chord&, const Chord&) = default;
  friend auto operator<=>(const Chord&, const Chord&) = default;

 private:
  Angle lo_;
  Angle hi_;
};

/// Nonempty set of distinct angles in canonical circular order (least angle first).
class Polygon {
 public:
  /// Throws InputError on an empty list or duplicate vertices.
  explicit Polygon(std::vector<Angle> vertices);
  /// Same, but duplicates are merged instead of rejected.
  static Polygon merged(std::vector<Angle> vertices);
  /// Comma separated "p/q" list.
  static Polygon parse(std::string_view text);

  const std::vector<Angle>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool contains(const Angle& a) const;
  /// Consecutive-vertex chords (wrapping). One chord for a leaf, none for a point.
  std::vector<Chord> boundary_chords() const;
  std::string str() const;

  friend bool operator==(const Polygon&, const Polygon&) = default;
  friend auto operator<=>(const Polygon&, const Polygon&) = default;

 private:
  struct Canonical {};
  Polygon(Canonical, std::vector<Angle> sorted) : vertices_(std::move(sorted)) {}
  std::vector<Angle> vertices_;
};

struct OrbitInfo {
  int preperiod = 0;
  int period = 1;
  friend bool operator==(const OrbitInfo&, const OrbitInfo&) = default;
};

Angle sigma(const Angle& t, Degree d);
/// sigma applied n times.
Angle sigma_n(const Angle& t, Degree d, long long n);
/// The d angles (t+k)/d, in increasing order.
std::vector<Angle> preimages(const Angle& t, Degree d);
OrbitInfo orbit_info(const Angle& t, Degree d);

Chord sigma(const Chord& c, Degree d);
/// Vertexwise image, duplicates merged.
Polygon sigma(const Polygon& p, Degree d);

bool chords_cross(const Chord& p, const Chord& q);
bool sets_unlinked(const Polygon& a, const Polygon& b);
/// Shorter arc length between the endpoints, in [0, 1/2].
Rational chord_arclength(const Chord& c);
/// Throws InputError for a degenerate chord.
bool is_critical_chord(const Chord& c, Degree d);
bool is_recurrent_chord(const Chord& c, Degree d);

}  // namespace laminata
