#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace stochdil {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Mode { Exact, Float };

std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view text);

/// A matrix or vector entry: either an exact rational (always reduced, with a
/// positive denominator) or an IEEE double. Binary operations require both
/// operands to share a mode and throw ErrorKind::ModeMismatch otherwise.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational value) : value_(std::move(value)) {}
  Scalar(double value) : value_(value) {}

  static Scalar zero(Mode mode);
  static Scalar one(Mode mode);
  static Scalar integer(std::int64_t value, Mode mode);
  static Scalar fraction(std::int64_t num, std::int64_t den);

  /// Parses "p/q", an integer, or a decimal literal ("0.3" -> 3/10) as an
  /// exact rational.
  static Scalar parse_exact(std::string_view text);

  Mode mode() const noexcept {
    return std::holds_alternative<Rational>(value_) ? Mode::Exact : Mode::Float;
  }
  bool is_exact() const noexcept { return mode() == Mode::Exact; }

  const Rational& rational() const;
  double to_double() const;

  Scalar to_mode(Mode mode) const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  Scalar abs() const;

  /// "p/q" (or "p" for integers) in exact mode, 12 significant digits in
  /// float mode.
  std::string to_string() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  Scalar operator-() const;

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  // Same-mode comparison; exact equality in both modes.
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

 private:
  std::variant<Rational, double> value_;
};

Scalar max(const Scalar& a, const Scalar& b);

}  // namespace stochdil
