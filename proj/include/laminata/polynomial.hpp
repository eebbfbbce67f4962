#pragma once

#include <complex>
#include <vector>

namespace laminata::ray {

using cplx = std::complex<double>;

/// Complex polynomial, coefficients highest degree first.
class PolySpec {
 public:
  /// Throws InputError on a zero leading coefficient, degree below 2, or non-finite entries.
  explicit PolySpec(std::vector<cplx> coefficients);

  const std::vector<cplx>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  cplx operator()(cplx z) const;

 private:
  std::vector<cplx> coeffs_;
};

cplx horner(const std::vector<cplx>& coeffs, cplx z);
/// Value and first derivative.
std::pair<cplx, cplx> horner_d(const std::vector<cplx>& coeffs, cplx z);
std::vector<cplx> derivative(const std::vector<cplx>& coeffs);

/// Affine conjugate Q(w) = lambda (P(z) + shift) with w = lambda (z + shift), monic and centered.
/// lambda is the principal (d-1)-th root of the leading coefficient.
struct Normalized {
  std::vector<cplx> coeffs;  // highest first, leading 1, next 0
  cplx lambda{1.0, 0.0};
  cplx shift{0.0, 0.0};
  int degree = 2;

  cplx to_normal(cplx z) const { return lambda * (z + shift); }
  cplx from_normal(cplx w) const { return w / lambda - shift; }
  cplx operator()(cplx w) const { return horner(coeffs, w); }
};

Normalized normalize(const PolySpec& p);

struct RootSet {
  std::vector<cplx> roots;       // with repetition, sorted by (re, im)
  std::vector<double> residuals; // |p(root)|
  std::vector<double> scales;    // sum |a_k| |root|^k
  bool converged = true;
};

/// All complex roots of a polynomial of degree >= 1 by Aberth iteration.
RootSet aberth_roots(const std::vector<cplx>& coeffs);

}  // namespace laminata::ray
