#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace laminata {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for malformed or out-of-range user input (angles, polygons, files).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Degree d >= 2 of the circle map t -> d*t mod 1.
class Degree {
 public:
  explicit Degree(int d) : d_(d) {
    if (d < 2) throw InputError("degree must be >= 2, got " + std::to_string(d));
  }
  int value() const { return d_; }
  friend bool operator==(Degree, Degree) = default;

 private:
  int d_;
};

/// Exact point of the circle R/Z: a reduced rational in [0, 1).
class Angle {
 public:
  Angle() = default;
  /// Any rational; the value is reduced mod 1 into [0, 1).
  explicit Angle(const Rational& value);
  Angle(const BigInt& numerator, const BigInt& denominator);
  Angle(long long numerator, long long denominator)
      : Angle(BigInt(numerator), BigInt(denominator)) {}

  /// Strict text form "p/q" with 0 <= p < q (reduced on input); "0" is accepted.
  static Angle parse(std::string_view text);

  const Rational& value() const { return value_; }
  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  double to_double() const { return value_.convert_to<double>(); }
  std::string str() const;

  friend bool operator==(const Angle& a, const Angle& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_{0};
};

/// Positive circular distance from `from` to `to`, in [0, 1).
Rational ccw_offset(const Angle& from, const Angle& to);

/// True iff x lies in the open positively oriented arc (a, b). Empty when a == b.
bool in_open_arc(const Angle& x, const Angle& a, const Angle& b);

}  // namespace laminata

template <>
struct std::hash<laminata::Angle> {
  std::size_t operator()(const laminata::Angle& a) const noexcept {
    return boost::multiprecision::hash_value(a.numerator()) * 1000003u ^
           boost::multiprecision::hash_value(a.denominator());
  }
};
