#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hetcache {

/// Exact rational number on 64-bit words. All intermediate products go
/// through __int128 and throw std::overflow_error instead of wrapping, so
/// load accounting stays bit-exact or fails loudly.
class Rational {
public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    __int128 nn = n, dd = d;
    if (dd < 0) { nn = -nn; dd = -dd; }
    normalize_assign(nn, dd);
  }

  /// Exact conversion: every finite double is a dyadic rational.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rational: non-finite double");
    int e = 0;
    double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
    std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    e -= 53;
    __int128 n = mant, d = 1;
    while (e > 0) { n <<= 1; --e; if (n > INT64_MAX || n < INT64_MIN) throw std::overflow_error("Rational::from_double"); }
    while (e < 0) { d <<= 1; ++e; if (d > INT64_MAX) { // reduce early when mantissa is even
        if (n % 2 == 0) { n /= 2; d /= 2; } else throw std::overflow_error("Rational::from_double"); } }
    Rational r;
    r.normalize_assign(n, d);
    return r;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  friend Rational operator-(const Rational& a) { Rational r; r.num_ = -a.num_; r.den_ = a.den_; return r; }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;  // both normalized
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
  using i128 = __int128;

  static Rational from128(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    Rational r;
    r.normalize_assign(n, d);
    return r;
  }

  void normalize_assign(i128 n, i128 d) {
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("Rational: value exceeds 64-bit range");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace hetcache
