#include "stochdil/scalar.hpp"

#include "stochdil/error.hpp"

#include <cmath>
#include <cstdio>

namespace stochdil {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotStochastic: return "NotStochastic";
    case ErrorKind::NotBiStochastic: return "NotBiStochastic";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::InvalidProbVec: return "InvalidProbVec";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::InvalidRightInverse: return "InvalidRightInverse";
    case ErrorKind::NotFixedPoint: return "NotFixedPoint";
    case ErrorKind::ZeroComponent: return "ZeroComponent";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::IncompleteKrausSet: return "IncompleteKrausSet";
    case ErrorKind::CompletionFailure: return "CompletionFailure";
    case ErrorKind::AnchorOutsideRegion: return "AnchorOutsideRegion";
    case ErrorKind::NoPerfectMatching: return "NoPerfectMatching";
    case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::DemoMismatch: return "DemoMismatch";
  }
  return "Unknown";
}

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::Exact ? "exact" : "float";
}

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::Exact;
  if (text == "float") return Mode::Float;
  throw Error(ErrorKind::Parse, "unknown mode '" + std::string(text) + "'");
}

namespace {

[[noreturn]] void mode_mismatch() {
  throw Error(ErrorKind::ModeMismatch, "cannot mix exact and float scalars");
}

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::Parse, "empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw Error(ErrorKind::Parse, "bad integer '" + std::string(text) + "'");
  for (std::size_t k = start; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') {
      throw Error(ErrorKind::Parse, "bad integer '" + std::string(text) + "'");
    }
  }
  BigInt value(std::string(text.substr(start)));
  return text[0] == '-' ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Scalar Scalar::zero(Mode mode) { return integer(0, mode); }
Scalar Scalar::one(Mode mode) { return integer(1, mode); }

Scalar Scalar::integer(std::int64_t value, Mode mode) {
  if (mode == Mode::Exact) return Scalar(Rational(value));
  return Scalar(static_cast<double>(value));
}

Scalar Scalar::fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator");
  if (den < 0) return Scalar(Rational(-BigInt(num), -BigInt(den)));
  return Scalar(Rational(num, den));
}

Scalar Scalar::parse_exact(std::string_view raw) {
  std::string_view text = trim(raw);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(trim(text.substr(0, slash)));
    BigInt den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Scalar(Rational(num, den));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::Parse, "bad decimal '" + std::string(text) + "'");
    }
    bool negative = !digits.empty() && digits[0] == '-';
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    BigInt whole = parse_integer(digits);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt frac_part(frac);
    BigInt num = whole * scale + (negative ? BigInt(-frac_part) : frac_part);
    return Scalar(Rational(num, scale));
  }
  return Scalar(Rational(parse_integer(text)));
}

const Rational& Scalar::rational() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw Error(ErrorKind::NotExact, "scalar is in float mode");
}

double Scalar::to_double() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->convert_to<double>();
  return std::get<double>(value_);
}

Scalar Scalar::to_mode(Mode mode) const {
  if (mode == this->mode()) return *this;
  if (mode == Mode::Float) return Scalar(to_double());
  double v = std::get<double>(value_);
  if (!std::isfinite(v)) throw Error(ErrorKind::Parse, "non-finite value has no exact form");
  return Scalar(Rational(v));
}

int Scalar::sign() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->sign();
  double v = std::get<double>(value_);
  return (v > 0) - (v < 0);
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Rational>(&value_)) {
    if (denominator(*r) == 1) return numerator(*r).str();
    return numerator(*r).str() + "/" + denominator(*r).str();
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", std::get<double>(value_));
  return buf;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (mode() != rhs.mode()) mode_mismatch();
  if (is_exact()) std::get<Rational>(value_) += std::get<Rational>(rhs.value_);
  else std::get<double>(value_) += std::get<double>(rhs.value_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (mode() != rhs.mode()) mode_mismatch();
  if (is_exact()) std::get<Rational>(value_) -= std::get<Rational>(rhs.value_);
  else std::get<double>(value_) -= std::get<double>(rhs.value_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (mode() != rhs.mode()) mode_mismatch();
  if (is_exact()) std::get<Rational>(value_) *= std::get<Rational>(rhs.value_);
  else std::get<double>(value_) *= std::get<double>(rhs.value_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (mode() != rhs.mode()) mode_mismatch();
  if (is_exact()) {
    if (rhs.is_zero()) throw Error(ErrorKind::ParameterOutOfRange, "exact division by zero");
    std::get<Rational>(value_) /= std::get<Rational>(rhs.value_);
  } else {
    std::get<double>(value_) /= std::get<double>(rhs.value_);
  }
  return *this;
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return Scalar(Rational(-*r));
  return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.mode() != rhs.mode()) mode_mismatch();
  if (lhs.is_exact()) return std::get<Rational>(lhs.value_) == std::get<Rational>(rhs.value_);
  return std::get<double>(lhs.value_) == std::get<double>(rhs.value_);
}

std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.mode() != rhs.mode()) mode_mismatch();
  if (lhs.is_exact()) {
    const auto& a = std::get<Rational>(lhs.value_);
    const auto& b = std::get<Rational>(rhs.value_);
    if (a < b) return std::partial_ordering::less;
    if (a > b) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  return std::get<double>(lhs.value_) <=> std::get<double>(rhs.value_);
}

Scalar max(const Scalar& a, const Scalar& b) { return (a < b) ? b : a; }

}  // namespace stochdil
