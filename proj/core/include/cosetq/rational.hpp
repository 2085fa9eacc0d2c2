#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cosetq {

/// Arbitrary-precision integer used for every series coefficient.
using Integer = boost::multiprecision::cpp_int;

/// Exact rational number kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(Integer value) : num_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Rational(Integer num, Integer den);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  Integer floor() const;
  Integer ceil() const;

  /// Narrowing conversion; throws std::overflow_error if not an int64-sized integer.
  std::int64_t to_int64() const;
  double to_double() const;

  std::string str() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void normalize();

  Integer num_{0};
  Integer den_{1};
};

/// Narrowing conversion of an Integer; throws std::overflow_error when out of range.
std::int64_t to_int64(const Integer& value);

std::int64_t lcm64(std::int64_t a, std::int64_t b);

}  // namespace cosetq
