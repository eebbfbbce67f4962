#include "laminata/render.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include <fmt/format.h>

namespace laminata::render {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Pt {
  double x;
  double y;
};

std::string num(double v) {
  // Avoid "-0.0000" so identical geometry prints identically.
  std::string s = fmt::format("{:.4f}", v);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string header(int canvas) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
      canvas);
}

class Disk {
 public:
  explicit Disk(int canvas) : c_(canvas / 2.0), r_(0.45 * canvas) {}
  Pt at(const Angle& t) const {
    const double a = kTwoPi * t.to_double();
    return {c_ + r_ * std::cos(a), c_ - r_ * std::sin(a)};
  }
  double center() const { return c_; }
  double radius() const { return r_; }

 private:
  double c_;
  double r_;
};

std::string chord_path(const Chord& c, const Disk& disk, GeodesicStyle style) {
  const Rational fwd = ccw_offset(c.lo(), c.hi());
  if (style == GeodesicStyle::euclidean_chord || fwd == Rational(1, 2)) {
    const Pt a = disk.at(c.lo());
    const Pt b = disk.at(c.hi());
    return "M " + num(a.x) + " " + num(a.y) + " L " + num(b.x) + " " + num(b.y);
  }
  // Circle orthogonal to the boundary; traverse the short arc counterclockwise.
  const bool lo_first = fwd < Rational(1, 2);
  const Angle& u = lo_first ? c.lo() : c.hi();
  const Angle& v = lo_first ? c.hi() : c.lo();
  const double delta = kTwoPi * (lo_first ? fwd : Rational(1) - fwd).convert_to<double>();
  const double radius = disk.radius() * std::tan(delta / 2.0);
  const Pt a = disk.at(u);
  const Pt b = disk.at(v);
  return "M " + num(a.x) + " " + num(a.y) + " A " + num(radius) + " " + num(radius) + " 0 0 0 " +
         num(b.x) + " " + num(b.y);
}

std::string style_block(const FigureSpec& spec) {
  return fmt::format(
      "<style>\n"
      ".disk{{fill:none;stroke:#000000;stroke-width:{0}}}\n"
      ".leaf{{fill:none;stroke:{1};stroke-width:{0}}}\n"
      ".critical{{fill:none;stroke:{2};stroke-width:{3}}}\n"
      ".all-critical{{fill:{4};fill-opacity:0.6;stroke:none}}\n"
      ".point{{fill:{1}}}\n"
      ".ray{{fill:none;stroke:{1};stroke-width:{0}}}\n"
      ".equipotential{{fill:none;stroke:#7f8c8d;stroke-width:{0}}}\n"
      ".axis{{stroke:#bbbbbb;stroke-width:{0}}}\n"
      ".landing{{fill:{2}}}\n"
      ".non-smooth{{fill:none;stroke:{4};stroke-width:{3}}}\n"
      ".label{{font-family:monospace;font-size:10px}}\n"
      "</style>\n",
      num(spec.stroke), spec.leaf_color, spec.critical_color, num(spec.critical_stroke), spec.gap_color);
}

}  // namespace

const char* to_string(GeodesicStyle s) {
  return s == GeodesicStyle::euclidean_chord ? "euclidean-chord" : "hyperbolic-arc";
}

void validate(const FigureSpec& spec) {
  if (spec.canvas < 64) throw InputError("canvas must be at least 64 px");
  if (spec.leaf_color == spec.critical_color || spec.leaf_color == spec.gap_color ||
      spec.critical_color == spec.gap_color) {
    throw InputError("palette needs three distinct colors");
  }
  if (!(spec.stroke > 0.0) || !(spec.critical_stroke > 0.0)) throw InputError("stroke widths must be positive");
}

std::string render_lamination(const lam::Prelamination& l, const FigureSpec& spec) {
  validate(spec);
  const Disk disk(spec.canvas);
  const Degree d = l.degree();
  std::string out = header(spec.canvas);
  out += style_block(spec);

  for (const auto& g : lam::finite_gaps(l)) {
    if (lam::gap_image(g, d).image.size() != 1) continue;
    out += "<polygon class=\"all-critical\" points=\"";
    bool first = true;
    for (const auto& v : g.vertices()) {
      const Pt p = disk.at(v);
      if (!first) out += ' ';
      out += num(p.x) + "," + num(p.y);
      first = false;
    }
    out += "\"/>\n";
  }

  out += "<circle class=\"disk\" cx=\"" + num(disk.center()) + "\" cy=\"" + num(disk.center()) + "\" r=\"" +
         num(disk.radius()) + "\"/>\n";

  std::set<Angle> endpoints;
  for (const auto& c : l.chords()) {
    if (c.degenerate()) {
      const Pt p = disk.at(c.lo());
      out += "<circle class=\"point\" cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"" +
             num(2.0 * spec.stroke) + "\"/>\n";
      endpoints.insert(c.lo());
      continue;
    }
    const char* cls = is_critical_chord(c, d) ? "critical" : "leaf";
    out += fmt::format("<path class=\"{}\" d=\"{}\"/>\n", cls, chord_path(c, disk, spec.style));
    endpoints.insert(c.lo());
    endpoints.insert(c.hi());
  }

  if (spec.labels) {
    for (const auto& a : endpoints) {
      const double t = kTwoPi * a.to_double();
      const double r = disk.radius() + 12.0;
      out += "<text class=\"label\" x=\"" + num(disk.center() + r * std::cos(t)) + "\" y=\"" +
             num(disk.center() - r * std::sin(t)) + "\" text-anchor=\"middle\">" + a.str() + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

namespace {

class Plane {
 public:
  Plane(int canvas, const Viewport& v) : canvas_(canvas), v_(v) {}
  Pt at(ray::cplx z) const {
    const double s = canvas_ / (2.0 * v_.half_width);
    return {canvas_ / 2.0 + (z.real() - v_.center_re) * s, canvas_ / 2.0 - (z.imag() - v_.center_im) * s};
  }
  double lo_re() const { return v_.center_re - v_.half_width; }
  double hi_re() const { return v_.center_re + v_.half_width; }
  double lo_im() const { return v_.center_im - v_.half_width; }
  double hi_im() const { return v_.center_im + v_.half_width; }
  bool inside(ray::cplx z) const {
    return z.real() >= lo_re() && z.real() <= hi_re() && z.imag() >= lo_im() && z.imag() <= hi_im();
  }

  /// Liang-Barsky clip of segment a-b; false if nothing is visible.
  bool clip(ray::cplx& a, ray::cplx& b) const {
    double t0 = 0.0;
    double t1 = 1.0;
    const double dx = b.real() - a.real();
    const double dy = b.imag() - a.imag();
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.real() - lo_re(), hi_re() - a.real(), a.imag() - lo_im(), hi_im() - a.imag()};
    for (int i = 0; i < 4; ++i) {
      if (p[i] == 0.0) {
        if (q[i] < 0.0) return false;
        continue;
      }
      const double r = q[i] / p[i];
      if (p[i] < 0.0) {
        if (r > t1) return false;
        t0 = std::max(t0, r);
      } else {
        if (r < t0) return false;
        t1 = std::min(t1, r);
      }
    }
    const ray::cplx da(dx, dy);
    const ray::cplx na = a + t0 * da;
    const ray::cplx nb = a + t1 * da;
    a = na;
    b = nb;
    return true;
  }

 private:
  int canvas_;
  Viewport v_;
};

std::string clipped_path(const std::vector<ray::cplx>& pts, const Plane& plane, bool closed) {
  std::string d;
  bool pen_down = false;
  ray::cplx last_end;
  const std::size_t n = pts.size();
  const std::size_t segs = closed ? n : (n == 0 ? 0 : n - 1);
  for (std::size_t i = 0; i < segs; ++i) {
    ray::cplx a = pts[i];
    ray::cplx b = pts[(i + 1) % n];
    if (!plane.clip(a, b)) {
      pen_down = false;
      continue;
    }
    if (!pen_down || a != last_end) {
      const Pt p = plane.at(a);
      d += (d.empty() ? "M " : " M ") + num(p.x) + " " + num(p.y);
    }
    const Pt q = plane.at(b);
    d += " L " + num(q.x) + " " + num(q.y);
    pen_down = b == pts[(i + 1) % n];
    last_end = b;
  }
  if (n == 1 && plane.inside(pts[0])) {
    const Pt p = plane.at(pts[0]);
    d = "M " + num(p.x) + " " + num(p.y);
  }
  return d;
}

}  // namespace

std::string render_rayfield(std::span<const ray::RayTrace> traces,
                            std::span<const std::vector<ray::cplx>> equipotentials, const FigureSpec& spec,
                            const Viewport& view) {
  validate(spec);
  if (!(view.half_width > 0.0)) throw InputError("viewport half width must be positive");
  const Plane plane(spec.canvas, view);
  std::string out = header(spec.canvas);
  out += style_block(spec);

  const Pt o = plane.at({0.0, 0.0});
  const double c = spec.canvas;
  if (o.y >= 0.0 && o.y <= c) {
    out += "<line class=\"axis\" x1=\"0.0000\" y1=\"" + num(o.y) + "\" x2=\"" + num(c) + "\" y2=\"" + num(o.y) +
           "\"/>\n";
  }
  if (o.x >= 0.0 && o.x <= c) {
    out += "<line class=\"axis\" x1=\"" + num(o.x) + "\" y1=\"0.0000\" x2=\"" + num(o.x) + "\" y2=\"" + num(c) +
           "\"/>\n";
  }

  for (const auto& eq : equipotentials) {
    out += "<path class=\"equipotential\" d=\"" + clipped_path(eq, plane, true) + "\"/>\n";
  }
  for (const auto& tr : traces) {
    out += "<path class=\"ray\" data-angle=\"" + tr.angle.str() + "\" d=\"" +
           clipped_path(tr.points, plane, false) + "\"/>\n";
  }
  const double r = 2.5 * spec.stroke;
  for (const auto& tr : traces) {
    if (tr.status == ray::RayStatus::landed && plane.inside(tr.landing)) {
      const Pt p = plane.at(tr.landing);
      out += "<circle class=\"landing\" data-angle=\"" + tr.angle.str() + "\" cx=\"" + num(p.x) + "\" cy=\"" +
             num(p.y) + "\" r=\"" + num(r) + "\"/>\n";
    } else if (tr.status == ray::RayStatus::non_smooth_suspect && plane.inside(tr.near_precritical)) {
      const Pt p = plane.at(tr.near_precritical);
      out += "<rect class=\"non-smooth\" data-angle=\"" + tr.angle.str() + "\" x=\"" + num(p.x - r) +
             "\" y=\"" + num(p.y - r) + "\" width=\"" + num(2 * r) + "\" height=\"" + num(2 * r) + "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

std::string render_backdrop_pgm(const ray::PolySpec& p, const Viewport& view, int width, int height,
                                const ray::GreenBudget& budget) {
  if (width < 1 || height < 1) throw InputError("raster size must be positive");
  const ray::Normalized q = ray::normalize(p);
  std::string out = fmt::format("P5\n{} {}\n255\n", width, height);
  const double s = 2.0 * view.half_width / width;
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const ray::cplx z(view.center_re - view.half_width + (col + 0.5) * s,
                        view.center_im + view.half_width * height / width - (row + 0.5) * s);
      const double level = ray::green_level(q, q.to_normal(z), budget).level;
      const double shade = level > 0.0 ? 255.0 * (1.0 - std::exp(-4.0 * level)) : 0.0;
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(std::min(255.0, shade)))));
    }
  }
  return out;
}

}  // namespace laminata::render
