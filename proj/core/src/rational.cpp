#include "gcache/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "gcache/errors.hpp"

namespace gcache {

namespace {

BigInt gcd_big(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw ParameterError("empty integer");
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw ParameterError("malformed integer '" + std::string(text) + "'");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParameterError("malformed integer '" + std::string(text) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  normalize();
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : num_(numerator), den_(denominator) {
  normalize();
}

void Rational::normalize() {
  if (den_ == 0) throw ParameterError("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const BigInt g = gcd_big(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_integer(trim(text.substr(0, slash))),
                    parse_integer(trim(text.substr(slash + 1))));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    const bool negative = !whole.empty() && whole[0] == '-';
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt w = (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : parse_integer(whole);
    BigInt f = frac.empty() ? BigInt(0) : parse_integer(frac);
    if (f < 0) throw ParameterError("malformed decimal '" + std::string(text) + "'");
    if (negative) f = -f;
    return Rational(w * scale + f, scale);
  }
  return Rational(parse_integer(text), 1);
}

BigInt Rational::floor() const {
  BigInt q = num_ / den_;  // truncates toward zero
  if (num_ < 0 && q * den_ != num_) q -= 1;
  return q;
}

BigInt Rational::ceil() const {
  BigInt q = num_ / den_;
  if (num_ > 0 && q * den_ != num_) q += 1;
  return q;
}

double Rational::to_double() const {
  if (num_ == 0) return 0.0;
  const BigInt a = num_ < 0 ? BigInt(-num_) : num_;
  const double v = std::exp(log_big(a) - log_big(den_));
  return num_ < 0 ? -v : v;
}

std::string Rational::str() const {
  std::ostringstream os;
  os << num_;
  if (den_ != 1) os << '/' << den_;
  return os.str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw ParameterError("division by zero rational");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const BigInt lhs = a.num_ * b.den_;
  const BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double log_big(const BigInt& value) {
  if (value <= 0) {
    return value == 0 ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::quiet_NaN();
  }
  const auto bits = static_cast<long>(boost::multiprecision::msb(value));
  if (bits < 900) return std::log(value.convert_to<double>());
  const long shift = bits - 64;
  const BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double to_double(const BigInt& value) {
  if (value > 0 && boost::multiprecision::msb(value) >= 1023) {
    return std::numeric_limits<double>::infinity();
  }
  return value.convert_to<double>();
}

}  // namespace gcache
