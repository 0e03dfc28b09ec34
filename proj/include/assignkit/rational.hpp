#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace assignkit {

/// Exact rational arithmetic on a 64-bit numerator/denominator pair.
///
/// All solver math in this library runs on Rational so that dual
/// feasibility certificates and the "epsilon < 1/n implies optimal"
/// argument hold exactly, with no floating-point rounding. Intermediate
/// products are carried in 128-bit integers; a result that does not fit
/// back into 64 bits throws std::overflow_error.
class Rational {
  using I128 = __int128;

 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    *this = from_i128(num, den);
  }

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }
  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
  [[nodiscard]] constexpr bool is_zero() const { return num_ == 0; }
  [[nodiscard]] constexpr bool is_negative() const { return num_ < 0; }

  [[nodiscard]] Rational abs() const { return num_ < 0 ? -*this : *this; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) {
      return from_i128(static_cast<I128>(a.num_) + b.num_, 1);
    }
    const I128 n = static_cast<I128>(a.num_) * b.den_ + static_cast<I128>(b.num_) * a.den_;
    const I128 d = static_cast<I128>(a.den_) * b.den_;
    return from_i128(n, d);
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) {
      return from_i128(static_cast<I128>(a.num_) - b.num_, 1);
    }
    const I128 n = static_cast<I128>(a.num_) * b.den_ - static_cast<I128>(b.num_) * a.den_;
    const I128 d = static_cast<I128>(a.den_) * b.den_;
    return from_i128(n, d);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce first so the products stay small.
    const std::int64_t g1 = gcd64(a.num_, b.den_);
    const std::int64_t g2 = gcd64(b.num_, a.den_);
    const I128 n = static_cast<I128>(a.num_ / g1) * (b.num_ / g2);
    const I128 d = static_cast<I128>(a.den_ / g2) * (b.den_ / g1);
    return from_i128(n, d);
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    const std::int64_t g1 = gcd64(a.num_, b.num_);
    const std::int64_t g2 = gcd64(b.den_, a.den_);
    const I128 n = static_cast<I128>(a.num_ / g1) * (b.den_ / g2);
    const I128 d = static_cast<I128>(a.den_ / g2) * (b.num_ / g1);
    return from_i128(n, d);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;  // |num_| <= INT64_MAX is maintained by normalization
    r.den_ = den_;
    return r;
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
    if (a.den_ == b.den_) return a.num_ < b.num_;
    return static_cast<I128>(a.num_) * b.den_ < static_cast<I128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  [[nodiscard]] std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Parses "a", "a/b" or a plain decimal like "-1.25" (kept exact).
  static Rational parse(std::string_view text) {
    const std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational token");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const std::int64_t den = parse_i64(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("rational token with zero denominator '" + s + "'");
      return Rational(parse_i64(s.substr(0, slash)), den);
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
      const std::string head = s.substr(0, dot);
      const std::string frac = s.substr(dot + 1);
      if (frac.empty() || frac.size() > 18) {
        throw std::invalid_argument("malformed rational token '" + s + "'");
      }
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      const bool neg = !head.empty() && head[0] == '-';
      const std::string whole_digits = (head == "-" || head.empty()) ? "0" : head;
      const std::int64_t whole = parse_i64(whole_digits);
      const std::int64_t fpart = parse_digits(frac, s);
      const I128 n = static_cast<I128>(whole) * scale + (neg && whole == 0 ? -fpart
                                                         : whole < 0      ? -fpart
                                                                          : fpart);
      return from_i128(n, scale);
    }
    return Rational(parse_i64(s));
  }

 private:
  static std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    std::uint64_t x = a < 0 ? static_cast<std::uint64_t>(-(a + 1)) + 1 : static_cast<std::uint64_t>(a);
    std::uint64_t y = b < 0 ? static_cast<std::uint64_t>(-(b + 1)) + 1 : static_cast<std::uint64_t>(b);
    while (y != 0) {
      const std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    return x == 0 ? 1 : static_cast<std::int64_t>(x);
  }

  static I128 gcd128(I128 a, I128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const I128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  static Rational from_i128(I128 n, I128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (d != 1) {
      const I128 g = gcd128(n, d);
      n /= g;
      d /= g;
    }
    constexpr I128 lo = std::numeric_limits<std::int64_t>::min() + 1;
    constexpr I128 hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static std::int64_t parse_i64(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("malformed rational token");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed rational token '" + s + "'");
    I128 value = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw std::invalid_argument("malformed rational token '" + s + "'");
      }
      value = value * 10 + (s[i] - '0');
      if (value > std::numeric_limits<std::int64_t>::max()) {
        throw std::overflow_error("rational overflow");
      }
    }
    return s[0] == '-' ? -static_cast<std::int64_t>(value) : static_cast<std::int64_t>(value);
  }

  static std::int64_t parse_digits(const std::string& s, const std::string& whole_token) {
    for (char c : s) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("malformed rational token '" + whole_token + "'");
      }
    }
    return parse_i64(s);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace assignkit
