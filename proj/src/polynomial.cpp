#include "laminata/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "laminata/angle.hpp"

namespace laminata::ray {

PolySpec::PolySpec(std::vector<cplx> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.size() < 3) throw InputError("polynomial degree must be at least 2");
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InputError("polynomial coefficients must be finite");
    }
  }
  if (coeffs_.front() == cplx(0.0, 0.0)) throw InputError("leading coefficient is zero");
}

cplx PolySpec::operator()(cplx z) const { return horner(coeffs_, z); }

cplx horner(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc(0.0, 0.0);
  for (const auto& c : coeffs) acc = acc * z + c;
  return acc;
}

std::pair<cplx, cplx> horner_d(const std::vector<cplx>& coeffs, cplx z) {
  cplx p(0.0, 0.0);
  cplx dp(0.0, 0.0);
  for (const auto& c : coeffs) {
    dp = dp * z + p;
    p = p * z + c;
  }
  return {p, dp};
}

std::vector<cplx> derivative(const std::vector<cplx>& coeffs) {
  std::vector<cplx> out;
  const std::size_t n = coeffs.size() - 1;
  for (std::size_t i = 0; i < n; ++i) out.push_back(coeffs[i] * static_cast<double>(n - i));
  return out;
}

Normalized normalize(const PolySpec& p) {
  const auto& a = p.coefficients();
  const int d = p.degree();
  Normalized out;
  out.degree = d;
  out.lambda = std::pow(a[0], 1.0 / (d - 1));
  out.shift = a[1] / (static_cast<double>(d) * a[0]);

  // Taylor shift: r(u) = P(u - s), repeated synthetic division by (u + s).
  std::vector<cplx> r = a;
  const cplx root = -out.shift;
  for (int k = 0; k < d; ++k) {
    for (int i = 1; i <= d - k; ++i) r[i] += r[i - 1] * root;
  }
  r[d] += out.shift;
  // Q(w) = lambda r(w / lambda): coefficient of w^k is r_k lambda^(1-k).
  out.coeffs.resize(r.size());
  for (int i = 0; i <= d; ++i) {
    const int k = d - i;
    out.coeffs[i] = r[i] * std::pow(out.lambda, 1 - k);
  }
  out.coeffs[0] = 1.0;
  out.coeffs[1] = 0.0;
  return out;
}

RootSet aberth_roots(const std::vector<cplx>& coeffs) {
  RootSet out;
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return out;
  const auto dcoeffs = derivative(coeffs);

  double bound = 0.0;
  for (int i = 1; i <= n; ++i) bound = std::max(bound, std::abs(coeffs[i] / coeffs[0]));
  const double radius = 1.0 + bound;
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) {
    z[k] = std::polar(0.5 * radius, 2.0 * std::numbers::pi * k / n + 0.4);
  }

  out.converged = false;
  for (int iter = 0; iter < 1000; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const cplx pz = horner(coeffs, z[i]);
      if (pz == cplx(0.0, 0.0)) continue;
      const cplx ratio = pz / horner(dcoeffs, z[i]);
      cplx repel(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j != i) repel += 1.0 / (z[i] - z[j]);
      }
      const cplx step = ratio / (1.0 - ratio * repel);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (worst < 1e-15) {
      out.converged = true;
      break;
    }
  }

  std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (const auto& r : z) {
    double scale = 0.0;
    double pw = 1.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      scale += std::abs(*it) * pw;
      pw *= std::abs(r);
    }
    out.roots.push_back(r);
    out.residuals.push_back(std::abs(horner(coeffs, r)));
    out.scales.push_back(scale);
  }
  return out;
}

}  // namespace laminata::ray
