#include "laminata/angle.hpp"

#include <cctype>

namespace laminata {

namespace {

Rational frac(const Rational& v) {
  BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  num %= den;
  if (num < 0) num += den;
  return Rational(num, den);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Angle::Angle(const Rational& value) : value_(frac(value)) {}

Angle::Angle(const BigInt& numerator, const BigInt& denominator) {
  if (denominator <= 0) throw InputError("angle denominator must be positive");
  value_ = frac(Rational(numerator, denominator));
}

Angle Angle::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text == "0") return Angle();
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw InputError("malformed angle '" + std::string(text) + "': expected p/q");
  }
  const auto p = text.substr(0, slash);
  const auto q = text.substr(slash + 1);
  if (!all_digits(p) || !all_digits(q)) {
    throw InputError("malformed angle '" + std::string(text) + "': expected p/q");
  }
  const BigInt num(std::string{p});
  const BigInt den(std::string{q});
  if (den == 0) throw InputError("angle '" + std::string(text) + "' has zero denominator");
  if (num >= den) {
    throw InputError("angle '" + std::string(text) + "' is not normalized to [0,1)");
  }
  return Angle(num, den);
}

std::string Angle::str() const { return numerator().str() + "/" + denominator().str(); }

Rational ccw_offset(const Angle& from, const Angle& to) {
  Rational r = to.value() - from.value();
  if (r < 0) r += 1;
  return r;
}

bool in_open_arc(const Angle& x, const Angle& a, const Angle& b) {
  if (a == b) return false;
  const Rational ox = ccw_offset(a, x);
  return ox > 0 && ox < ccw_offset(a, b);
}

}  // namespace laminata
