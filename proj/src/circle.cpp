#include "laminata/circle.hpp"

#include <algorithm>
#include <map>

namespace laminata {

Chord::Chord(Angle a, Angle b) {
  if (b < a) std::swap(a, b);
  lo_ = std::move(a);
  hi_ = std::move(b);
}

std::string Chord::str() const { return "{" + lo_.str() + "," + hi_.str() + "}"; }

Polygon::Polygon(std::vector<Angle> vertices) {
  if (vertices.empty()) throw InputError("polygon must have at least one vertex");
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw InputError("polygon has duplicate vertices");
  }
  vertices_ = std::move(vertices);
}

Polygon Polygon::merged(std::vector<Angle> vertices) {
  if (vertices.empty()) throw InputError("polygon must have at least one vertex");
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return Polygon(Canonical{}, std::move(vertices));
}

Polygon Polygon::parse(std::string_view text) {
  std::vector<Angle> vs;
  while (true) {
    const auto comma = text.find(',');
    vs.push_back(Angle::parse(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Polygon(std::move(vs));
}

bool Polygon::contains(const Angle& a) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), a);
}

std::vector<Chord> Polygon::boundary_chords() const {
  std::vector<Chord> out;
  const std::size_t n = vertices_.size();
  if (n == 2) {
    out.emplace_back(vertices_[0], vertices_[1]);
  } else if (n > 2) {
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(vertices_[i], vertices_[(i + 1) % n]);
  }
  return out;
}

std::string Polygon::str() const {
  std::string s;
  for (const auto& v : vertices_) {
    if (!s.empty()) s += ',';
    s += v.str();
  }
  return s;
}

Angle sigma(const Angle& t, Degree d) { return Angle(t.value() * d.value()); }

Angle sigma_n(const Angle& t, Degree d, long long n) {
  if (n <= 0) return t;
  BigInt factor = boost::multiprecision::pow(BigInt(d.value()), static_cast<unsigned>(n));
  const BigInt den = t.denominator();
  BigInt num = (t.numerator() * (factor % den)) % den;
  return Angle(num, den);
}

std::vector<Angle> preimages(const Angle& t, Degree d) {
  std::vector<Angle> out;
  out.reserve(static_cast<std::size_t>(d.value()));
  for (int k = 0; k < d.value(); ++k) out.emplace_back((t.value() + k) / d.value());
  return out;
}

OrbitInfo orbit_info(const Angle& t, Degree d) {
  std::map<Angle, int> seen;
  Angle x = t;
  for (int i = 0;; ++i) {
    auto [it, inserted] = seen.emplace(x, i);
    if (!inserted) return OrbitInfo{it->second, i - it->second};
    x = sigma(x, d);
  }
}

Chord sigma(const Chord& c, Degree d) { return Chord(sigma(c.lo(), d), sigma(c.hi(), d)); }

Polygon sigma(const Polygon& p, Degree d) {
  std::vector<Angle> img;
  img.reserve(p.size());
  for (const auto& v : p.vertices()) img.push_back(sigma(v, d));
  return Polygon::merged(std::move(img));
}

bool chords_cross(const Chord& p, const Chord& q) {
  if (p.degenerate() || q.degenerate()) return false;
  if (p.has_endpoint(q.lo()) || p.has_endpoint(q.hi())) return false;
  // lo < hi, so the open arc (lo, hi) is the plain interval.
  const bool lo_inside = p.lo() < q.lo() && q.lo() < p.hi();
  const bool hi_inside = p.lo() < q.hi() && q.hi() < p.hi();
  return lo_inside != hi_inside;
}

bool sets_unlinked(const Polygon& a, const Polygon& b) {
  const auto ca = a.boundary_chords();
  const auto cb = b.boundary_chords();
  for (const auto& p : ca) {
    for (const auto& q : cb) {
      if (chords_cross(p, q)) return false;
    }
  }
  return true;
}

Rational chord_arclength(const Chord& c) {
  const Rational delta = c.hi().value() - c.lo().value();
  const Rational other = 1 - delta;
  return delta < other ? delta : other;
}

bool is_critical_chord(const Chord& c, Degree d) {
  if (c.degenerate()) throw InputError("criticality is undefined for a degenerate chord " + c.str());
  return sigma(c.lo(), d) == sigma(c.hi(), d);
}

bool is_recurrent_chord(const Chord& c, Degree d) {
  return orbit_info(c.lo(), d).preperiod == 0 || orbit_info(c.hi(), d).preperiod == 0;
}

}  // namespace laminata
