#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace gcache {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(BigInt numerator, BigInt denominator = 1);  // NOLINT: implicit from integers
  Rational(std::int64_t numerator, std::int64_t denominator = 1);  // NOLINT
  Rational(int numerator) : Rational(static_cast<std::int64_t>(numerator)) {}  // NOLINT

  /// Parses "a/b", "a" or a finite decimal such as "0.3".
  static Rational parse(std::string_view text);

  [[nodiscard]] const BigInt& num() const { return num_; }
  [[nodiscard]] const BigInt& den() const { return den_; }

  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] BigInt floor() const;
  [[nodiscard]] BigInt ceil() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string str() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  void normalize();

  BigInt num_ = 0;
  BigInt den_ = 1;
};

/// Natural logarithm of a positive big integer; values beyond double range
/// are handled by bit shifting.
double log_big(const BigInt& value);

/// Converts to double, saturating at +inf.
double to_double(const BigInt& value);

}  // namespace gcache
