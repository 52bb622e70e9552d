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

/// @file powerfloor.hpp
/// Exact floor(n^c) for 1 < c < 2 and the local replacement of n^c by a
/// straight line floor(n * alpha + beta) on short segments.
///
/// Rational exponents c = p/q are decided by an integer q-th root of n^p.
/// Real exponents (decimal strings) go through the MPFR precision ladder;
/// an enclosure straddling an integer is settled exactly by testing whether
/// n is a perfect q-th power of the decimal's reduced denominator.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>

#include "tmps/digits.hpp"
#include "tmps/errors.hpp"
#include "tmps/rational.hpp"
#include "tmps/real.hpp"

namespace tmps {

/// floor(X^(1/q)) for X >= 0, q >= 1.
inline BigInt integer_root(const BigInt& x, unsigned q) {
  if (x < 0) throw PreconditionError("integer_root: negative radicand");
  if (q == 0) throw PreconditionError("integer_root: zero index");
  if (q == 1 || x < 2) return x;
  const unsigned bits = static_cast<unsigned>(msb(x)) + 1;
  if (q >= bits) return 1;  // 2^q > x
  // Start above the root: 2^ceil(bits/q) >= x^(1/q).
  BigInt r = BigInt(1) << ((bits + q - 1) / q);
  while (true) {
    BigInt next = ((q - 1) * r + x / pow(r, q - 1)) / q;
    if (next >= r) break;
    r = next;
  }
  while (pow(r, q) > x) --r;
  while (pow(r + 1, q) <= x) ++r;
  return r;
}

class ExponentSpec {
 public:
  enum class Kind { kRational, kReal };

  static ExponentSpec rational(std::uint64_t p, std::uint64_t q) {
    require(q >= 1, "ExponentSpec: q must be positive");
    const std::uint64_t g = std::gcd(p, q);
    p /= g;
    q /= g;
    require(p > q && p < 2 * q, "ExponentSpec: c = p/q must satisfy 1 < c < 2");
    ExponentSpec c;
    c.kind_ = Kind::kRational;
    c.p_ = p;
    c.q_ = q;
    c.value_ = RealNumber(BigRational(p, q));
    return c;
  }

  static ExponentSpec real(const std::string& decimal, PrecisionLadder ladder = {}) {
    ExponentSpec c;
    c.kind_ = Kind::kReal;
    c.value_ = RealNumber::from_decimal(decimal);
    const BigRational& v = *c.value_.exact();
    require(v > 1 && v < 2, "ExponentSpec: c must satisfy 1 < c < 2");
    require(ladder.start >= 2 && ladder.start <= ladder.cap, "ExponentSpec: bad precision ladder");
    c.decimal_ = decimal;
    c.ladder_ = ladder;
    return c;
  }

  /// "p/q" selects the rational path, a decimal the real path.
  static ExponentSpec parse(const std::string& text, PrecisionLadder ladder = {}) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      Rational r = Rational::parse(text);
      require(r.num() > 0, "ExponentSpec: c must be positive");
      return rational(static_cast<std::uint64_t>(r.num()), static_cast<std::uint64_t>(r.den()));
    }
    return real(text, ladder);
  }

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::kRational; }
  std::uint64_t p() const { return p_; }
  std::uint64_t q() const { return q_; }
  const std::string& decimal() const { return decimal_; }
  const PrecisionLadder& ladder() const { return ladder_; }
  const RealNumber& value() const { return value_; }
  double approx() const { return is_rational() ? static_cast<double>(p_) / static_cast<double>(q_) : value_.approx(); }
  std::string str() const { return is_rational() ? std::to_string(p_) + "/" + std::to_string(q_) : decimal_; }

 private:
  Kind kind_ = Kind::kRational;
  std::uint64_t p_ = 3, q_ = 2;
  std::string decimal_;
  PrecisionLadder ladder_{};
  RealNumber value_;
};

namespace detail {

inline BigInt floor_power_rational(const BigInt& n, std::uint64_t p, std::uint64_t q) {
  return integer_root(pow(n, static_cast<unsigned>(p)), static_cast<unsigned>(q));
}

inline BigInt floor_power_real(const BigInt& n, const ExponentSpec& c) {
  if (n <= 1) return n;
  const BigRational& exact = *c.value().exact();
  const BigInt cp = numerator(exact), cq = denominator(exact);
  for (mpfr_prec_t prec = c.ladder().start; prec <= c.ladder().cap; prec *= 2) {
    BigFloat c_lo(prec), c_hi(prec), nn(std::max<mpfr_prec_t>(prec, bit_length(n))), lo(prec), hi(prec);
    c.value().enclose(c_lo, c_hi);
    set_integer(nn, n, MPFR_RNDN);
    mpfr_pow(lo.get(), nn.get(), c_lo.get(), MPFR_RNDD);
    mpfr_pow(hi.get(), nn.get(), c_hi.get(), MPFR_RNDU);
    if (auto f = common_floor(lo, hi)) return *f;
    // n^(P/Q) with gcd(P, Q) = 1 is an integer iff n is a perfect Q-th power.
    if (cq <= bit_length(n)) {
      const unsigned qq = static_cast<unsigned>(cq);
      BigInt t = integer_root(n, qq);
      if (pow(t, qq) == n) return pow(t, static_cast<unsigned>(cp));
    }
  }
  throw PrecisionExhausted("floor(n^c) undecided for n = " + n.str() + ", c = " + c.decimal() + " at " +
                           std::to_string(c.ladder().cap) + " bits");
}

}  // namespace detail

/// floor(n^c), exact.
inline BigInt floor_power(const BigInt& n, const ExponentSpec& c) {
  require(n >= 0, "floor_power: n must be nonnegative");
  if (c.is_rational()) return detail::floor_power_rational(n, c.p(), c.q());
  return detail::floor_power_real(n, c);
}

/// Fast exact floor(n^(p/q)) for results below 2^62. A long double estimate
/// is accepted when its fractional part is far from an integer, relative to
/// a 2^-40 error budget; otherwise the integer root decides.
class PowerFloor {
 public:
  explicit PowerFloor(const ExponentSpec& c) : spec_(c) {
    exponent_ = static_cast<long double>(c.p()) / static_cast<long double>(c.q());
  }

  std::uint64_t operator()(std::uint64_t n) const {
    if (n <= 1) return n;
    if (!spec_.is_rational()) return static_cast<std::uint64_t>(detail::floor_power_real(BigInt(n), spec_));
    const long double x = std::pow(static_cast<long double>(n), exponent_);
    if (x < 0x1p60L) {
      const long double fl = std::floor(x);
      const long double margin = x * 0x1p-40L + 0x1p-40L;
      if (x - fl > margin && fl + 1 - x > margin) return static_cast<std::uint64_t>(fl);
    }
    BigInt exact = detail::floor_power_rational(BigInt(n), spec_.p(), spec_.q());
    if (exact > BigInt(std::numeric_limits<std::int64_t>::max())) throw std::overflow_error("PowerFloor: result exceeds 63 bits");
    return static_cast<std::uint64_t>(exact);
  }

  const ExponentSpec& spec() const { return spec_; }

 private:
  ExponentSpec spec_;
  long double exponent_ = 1.5L;
};

/// A segment [a, a + K] on which floor(n^c) is compared with the Beatty
/// line floor(n * alpha + beta). alpha is an upper enclosure of f'(a), so it
/// lies in f'([a, a + K]); B is an upper enclosure of f''(a), which bounds
/// |f''| on the segment because f'' decreases for 1 < c < 2.
struct Segment {
  std::uint64_t a = 1;
  std::uint64_t K = 0;
  BigFloat alpha{kPrecision};
  BigFloat beta{kPrecision};
  BigFloat B{kPrecision};

  static constexpr mpfr_prec_t kPrecision = 256;
};

inline Segment linearize_segment(std::uint64_t a, std::uint64_t K, const ExponentSpec& c) {
  require(a >= 1, "linearize_segment: a must be >= 1");
  require(K >= 1, "linearize_segment: K must be >= 1");
  constexpr mpfr_prec_t p = Segment::kPrecision;
  Segment seg;
  seg.a = a;
  seg.K = K;
  BigFloat c_lo(p), c_hi(p), aa(p), e(p), t(p), fa(p), c_mid(p);
  c.value().enclose(c_lo, c_hi);
  mpfr_set_ui(aa.get(), a, MPFR_RNDN);
  // alpha >= c * a^(c-1)
  mpfr_sub_ui(e.get(), c_hi.get(), 1, MPFR_RNDU);
  mpfr_pow(t.get(), aa.get(), e.get(), MPFR_RNDU);
  mpfr_mul(seg.alpha.get(), t.get(), c_hi.get(), MPFR_RNDU);
  // B >= c (c-1) a^(c-2)
  mpfr_sub_ui(e.get(), c_hi.get(), 2, MPFR_RNDU);
  mpfr_pow(t.get(), aa.get(), e.get(), MPFR_RNDU);
  mpfr_mul(t.get(), t.get(), c_hi.get(), MPFR_RNDU);
  mpfr_sub_ui(e.get(), c_hi.get(), 1, MPFR_RNDU);
  mpfr_mul(seg.B.get(), t.get(), e.get(), MPFR_RNDU);
  // beta = f(a) - a * alpha
  mpfr_add(c_mid.get(), c_lo.get(), c_hi.get(), MPFR_RNDN);
  mpfr_div_2ui(c_mid.get(), c_mid.get(), 1, MPFR_RNDN);
  mpfr_pow(fa.get(), aa.get(), c_mid.get(), MPFR_RNDN);
  mpfr_mul_ui(t.get(), seg.alpha.get(), a, MPFR_RNDN);
  mpfr_sub(seg.beta.get(), fa.get(), t.get(), MPFR_RNDN);
  return seg;
}

/// floor(n * alpha + beta) for the segment's line, exact: the sum of two
/// 256-bit floats times a 64-bit integer fits in the working precision.
inline BigInt segment_line_floor(const Segment& seg, std::uint64_t n) {
  BigFloat v(1024);
  mpfr_mul_ui(v.get(), seg.alpha.get(), n, MPFR_RNDN);
  mpfr_add(v.get(), v.get(), seg.beta.get(), MPFR_RNDN);
  return v.floor();
}

/// Signed deviation x * alpha + beta - x^c at a real point x (double output).
inline double segment_line_error(const Segment& seg, double x, const ExponentSpec& c) {
  BigFloat xx(256), v(256), fx(256), cc(256), c_hi(256);
  mpfr_set_d(xx.get(), x, MPFR_RNDN);
  c.value().enclose(cc, c_hi);
  mpfr_pow(fx.get(), xx.get(), cc.get(), MPFR_RNDN);
  mpfr_mul(v.get(), xx.get(), seg.alpha.get(), MPFR_RNDN);
  mpfr_add(v.get(), v.get(), seg.beta.get(), MPFR_RNDN);
  mpfr_sub(v.get(), v.get(), fx.get(), MPFR_RNDN);
  return v.to_double();
}

/// Number of n in (a, a + K] with floor(n^c) != floor(n * alpha + beta).
inline std::uint64_t linearization_mismatch_count(const Segment& seg, const ExponentSpec& c) {
  std::uint64_t mismatches = 0;
  for (std::uint64_t n = seg.a + 1; n <= seg.a + seg.K; ++n)
    if (floor_power(BigInt(n), c) != segment_line_floor(seg, n)) ++mismatches;
  return mismatches;
}

/// Partition points a_i = ceil(N) + i K, i <= M, with M the largest index
/// such that a_M + L <= 2N.
inline std::vector<std::uint64_t> segment_partition(std::uint64_t N, std::uint64_t K, unsigned L) {
  require(K >= 1, "segment_partition: K must be >= 1");
  std::vector<std::uint64_t> points;
  for (std::uint64_t a = N; a + L <= 2 * N; a += K) points.push_back(a);
  return points;
}

}  // namespace tmps
