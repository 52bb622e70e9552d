// Copyright 2026 The tmps Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "tmps/digits.hpp"
#include "tmps/errors.hpp"

namespace tmps {

using BigRational = boost::multiprecision::cpp_rational;
using int128 = __int128;

namespace detail {

inline std::int64_t narrow_checked(int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational: 64-bit overflow");
  return static_cast<std::int64_t>(v);
}

inline int128 floor_div(int128 a, int128 b) {
  int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

// Exact rational with 64-bit numerator and positive 64-bit denominator,
// always in lowest terms. Intermediate products use 128 bits; results that
// do not fit throw std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  static Rational from128(int128 n, int128 d) {
    if (d == 0) throw PreconditionError("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    int128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::narrow_checked(n);
    r.den_ = detail::narrow_checked(d);
    return r;
  }

  /// Parses "p/q", an integer, or a finite decimal like "1.25".
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
      return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(parse_int(text));
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (frac.size() > 18) throw PreconditionError("Rational: too many decimal places");
    std::int64_t den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    bool negative = !digits.empty() && digits[0] == '-';
    std::int64_t whole = digits.empty() || digits == "-" || digits == "+" ? 0 : parse_int(digits);
    std::int64_t part = frac.empty() ? 0 : parse_int(frac);
    int128 n = static_cast<int128>(whole < 0 ? -whole : whole) * den + part;
    return from128(negative ? -n : n, den);
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  std::int64_t floor() const { return detail::narrow_checked(detail::floor_div(num_, den_)); }
  std::int64_t ceil() const { return -Rational(-num_, den_).floor(); }
  /// Fractional part {x} in [0, 1).
  Rational frac() const { return *this - Rational(floor()); }
  /// Nearest integer <x> = floor(x + 1/2).
  std::int64_t nearest() const { return (*this + Rational(1, 2)).floor(); }
  /// Distance to the nearest integer ||x||.
  Rational dist_to_int() const {
    Rational f = frac();
    Rational g = Rational(1) - f;
    return f < g ? f : g;
  }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  BigRational to_big() const { return BigRational(num_, den_); }
  std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(static_cast<int128>(a.num_) * b.den_ + static_cast<int128>(b.num_) * a.den_,
                   static_cast<int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(static_cast<int128>(a.num_) * b.den_ - static_cast<int128>(b.num_) * a.den_,
                   static_cast<int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(static_cast<int128>(a.num_) * b.num_, static_cast<int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw PreconditionError("Rational: division by zero");
    return from128(static_cast<int128>(a.num_) * b.den_, static_cast<int128>(a.den_) * b.num_);
  }
  Rational operator-() const { return from128(-static_cast<int128>(num_), den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int128 lhs = static_cast<int128>(a.num_) * b.den_;
    int128 rhs = static_cast<int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void assign(std::int64_t n, std::int64_t d) { *this = from128(n, d); }

  static std::int64_t parse_int(std::string_view s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(std::string(s), &used);
    } catch (const std::exception&) {
      throw PreconditionError("Rational: cannot parse '" + std::string(s) + "'");
    }
    if (used != s.size()) throw PreconditionError("Rational: cannot parse '" + std::string(s) + "'");
    return v;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// floor(n * alpha + beta) computed exactly.
inline std::int64_t floor_affine(std::int64_t n, const Rational& alpha, const Rational& beta) {
  int128 den = static_cast<int128>(alpha.den()) * beta.den();
  int128 num = static_cast<int128>(n) * alpha.num() * beta.den() + static_cast<int128>(beta.num()) * alpha.den();
  return detail::narrow_checked(detail::floor_div(num, den));
}

/// Exact floor of an arbitrary-precision rational.
inline BigInt floor_big(const BigRational& x) {
  BigInt n = numerator(x);
  BigInt d = denominator(x);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

inline std::uint64_t two_adic_valuation(std::uint64_t n) {
  if (n == 0) throw PreconditionError("two_adic_valuation: zero has infinite valuation");
  return static_cast<std::uint64_t>(std::countr_zero(n));
}

}  // namespace tmps
