#pragma once

#include <span>
#include <string>
#include <vector>

#include "laminata/lamination.hpp"
#include "laminata/rayfield.hpp"

namespace laminata::render {

enum class GeodesicStyle { euclidean_chord, hyperbolic_arc };

struct FigureSpec {
  int canvas = 512;
  double stroke = 1.0;
  double critical_stroke = 1.8;
  std::string leaf_color = "#1f4e9c";
  std::string critical_color = "#c0392b";
  std::string gap_color = "#f2c14e";
  GeodesicStyle style = GeodesicStyle::euclidean_chord;
  bool labels = false;  // angle labels at chord endpoints
};

/// Throws InputError for a canvas below 64 px or a palette with repeated colors.
void validate(const FigureSpec& spec);

/// Unit circle plus one path per non-degenerate chord; degenerate chords become dots.
/// Finite gaps whose image is a single point are filled.
std::string render_lamination(const lam::Prelamination& l, const FigureSpec& spec = {});

struct Viewport {
  double center_re = 0.0;
  double center_im = 0.0;
  double half_width = 2.0;  // half of the visible real range; square canvas
};

/// Rays as clipped paths, landing and non-smooth markers, equipotentials, axes.
std::string render_rayfield(std::span<const ray::RayTrace> traces,
                            std::span<const std::vector<ray::cplx>> equipotentials,
                            const FigureSpec& spec = {}, const Viewport& view = {});

/// Binary graymap of the escape-rate potential; bounded orbits are black.
std::string render_backdrop_pgm(const ray::PolySpec& p, const Viewport& view, int width, int height,
                                const ray::GreenBudget& budget = {});

const char* to_string(GeodesicStyle s);

}  // namespace laminata::render
