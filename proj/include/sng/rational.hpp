#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sng {

/// Exact rational number over 64-bit integers.
///
/// All game quantities (weights, thresholds, payoffs) are rationals so that
/// classification decisions ride on exact strict-vs-equal comparisons.
/// Intermediate products are done in 128 bits and an overflow_error is thrown
/// if a reduced result no longer fits; the networks this library targets stay
/// many orders of magnitude below that.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}
  Rational(long long num, long long den) { assign(num, den); }

  /// Parses "12", "-0.35", ".5" or "p/q". Decimal strings map exactly,
  /// e.g. "0.3" becomes 3/10.
  static Rational parse(std::string_view text);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero rational");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Decimal string when the denominator is of the form 2^a*5^b
  /// ("0.3", "1", "-0.25"), otherwise "p/q".
  std::string to_string() const;

 private:
  using i128 = __int128;

  void assign(long long num, long long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    num_ = num;
    den_ = den;
  }

  static Rational from_i128(i128 num, i128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    constexpr i128 lo = -i128(INT64_MAX), hi = i128(INT64_MAX);
    if (num < lo || num > hi || den > hi)
      throw std::overflow_error("rational out of 64-bit range");
    Rational r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }

  long long num_;
  long long den_;
};

inline Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw std::invalid_argument("empty number");
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("sign without digits: '" + std::string(text) + "'");

  auto digits_to_i128 = [&](std::string_view d) -> __int128 {
    __int128 v = 0;
    for (char c : d) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("bad digit in number '" + std::string(text) + "'");
      v = v * 10 + (c - '0');
      if (v > __int128(INT64_MAX) * 1000)
        throw std::overflow_error("number too large: '" + std::string(text) + "'");
    }
    return v;
  };

  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (ns.empty() || ds.empty())
      throw std::invalid_argument("bad fraction '" + std::string(text) + "'");
    __int128 n = digits_to_i128(ns), d = digits_to_i128(ds);
    if (d == 0) throw std::domain_error("zero denominator in '" + std::string(text) + "'");
    return from_i128(negative ? -n : n, d);
  }

  auto dot = s.find('.');
  std::string_view int_part = dot == std::string_view::npos ? s : s.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty())
    throw std::invalid_argument("bad number '" + std::string(text) + "'");

  __int128 n = int_part.empty() ? 0 : digits_to_i128(int_part);
  __int128 d = 1;
  for (char c : frac_part) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("bad digit in number '" + std::string(text) + "'");
    n = n * 10 + (c - '0');
    d *= 10;
    if (d > __int128(INT64_MAX))
      throw std::overflow_error("too many decimal places: '" + std::string(text) + "'");
  }
  return from_i128(negative ? -n : n, d);
}

inline std::string Rational::to_string() const {
  long long d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);

  int places = twos > fives ? twos : fives;
  __int128 scaled = __int128(num_ < 0 ? -num_ : num_);
  for (int i = 0; i < places - twos; ++i) scaled *= 2;
  for (int i = 0; i < places - fives; ++i) scaled *= 5;

  std::string digits;
  if (scaled == 0) digits = "0";
  while (scaled > 0) {
    digits.insert(digits.begin(), char('0' + int(scaled % 10)));
    scaled /= 10;
  }
  while (static_cast<int>(digits.size()) <= places) digits.insert(digits.begin(), '0');

  std::string out;
  if (num_ < 0) out += '-';
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    std::string frac = digits.substr(digits.size() - places);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  }
  return out;
}

}  // namespace sng
