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

/// @file real.hpp
/// High-precision reals: an RAII MPFR value, interval enclosures of real
/// constants, and the precision ladder used to decide floors with
/// certainty.

#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstring>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "tmps/digits.hpp"
#include "tmps/errors.hpp"
#include "tmps/rational.hpp"

namespace tmps {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  std::string str(int digits = 30) const {
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*Rg", digits, v_);
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
  }

  BigInt floor() const {
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, v_, MPFR_RNDD);
    char* raw = mpz_get_str(nullptr, 10, z);
    BigInt out(raw);
    void (*freefunc)(void*, size_t) = nullptr;
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(raw, std::strlen(raw) + 1);
    mpz_clear(z);
    return out;
  }

 private:
  mpfr_t v_;
};

inline void set_integer(BigFloat& out, const BigInt& n, mpfr_rnd_t rnd) {
  if (n >= 0 && n <= std::numeric_limits<unsigned long>::max()) {
    mpfr_set_ui(out.get(), static_cast<unsigned long>(n), rnd);
    return;
  }
  mpfr_set_str(out.get(), n.str().c_str(), 10, rnd);
}

inline mpfr_prec_t bit_length(const BigInt& n) {
  return n == 0 ? 1 : static_cast<mpfr_prec_t>(msb(boost::multiprecision::abs(n)) + 1);
}

/// Precision schedule: start bits, doubled until cap.
struct PrecisionLadder {
  mpfr_prec_t start = 128;
  mpfr_prec_t cap = 4096;
};

/// A real constant known through certified enclosures lo <= x <= hi at any
/// requested precision. Rational constants also carry their exact value.
class RealNumber {
 public:
  using Encloser = std::function<void(BigFloat& lo, BigFloat& hi)>;

  RealNumber() : RealNumber(BigRational(0)) {}

  RealNumber(Encloser enclose, std::optional<BigRational> exact, std::string label)
      : enclose_(std::move(enclose)), exact_(std::move(exact)), label_(std::move(label)) {}

  explicit RealNumber(const BigRational& q)
      : enclose_([q](BigFloat& lo, BigFloat& hi) { enclose_rational(q, lo, hi); }), exact_(q), label_(q.str()) {}

  explicit RealNumber(const Rational& q) : RealNumber(q.to_big()) {}

  /// Parses a plain decimal such as "1.41421356237" or an integer; the value
  /// is the exact decimal.
  static RealNumber from_decimal(const std::string& text) {
    BigRational q = parse_decimal(text);
    return RealNumber([text](BigFloat& lo, BigFloat& hi) {
      mpfr_set_str(lo.get(), text.c_str(), 10, MPFR_RNDD);
      mpfr_set_str(hi.get(), text.c_str(), 10, MPFR_RNDU);
    }, q, text);
  }

  /// sqrt(q) for q >= 0.
  static RealNumber sqrt_of(const BigRational& q) {
    if (q < 0) throw PreconditionError("RealNumber::sqrt_of: negative radicand");
    std::optional<BigRational> exact;
    BigInt n = numerator(q), d = denominator(q);
    BigInt rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn == n && rd * rd == d) exact = BigRational(rn, rd);
    return RealNumber([q](BigFloat& lo, BigFloat& hi) {
      enclose_rational(q, lo, hi);
      mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
      mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
    }, exact, "sqrt(" + q.str() + ")");
  }

  void enclose(BigFloat& lo, BigFloat& hi) const { enclose_(lo, hi); }
  const std::optional<BigRational>& exact() const { return exact_; }
  const std::string& label() const { return label_; }

  double approx() const {
    BigFloat lo(64), hi(64);
    enclose(lo, hi);
    return 0.5 * (lo.to_double() + hi.to_double());
  }

  static void enclose_rational(const BigRational& q, BigFloat& lo, BigFloat& hi) {
    const mpfr_prec_t p = lo.precision();
    BigFloat num_lo(p), num_hi(p), den_lo(p), den_hi(p);
    set_integer(num_lo, numerator(q), MPFR_RNDD);
    set_integer(num_hi, numerator(q), MPFR_RNDU);
    set_integer(den_lo, denominator(q), MPFR_RNDD);
    set_integer(den_hi, denominator(q), MPFR_RNDU);
    if (q >= 0) {
      mpfr_div(lo.get(), num_lo.get(), den_hi.get(), MPFR_RNDD);
      mpfr_div(hi.get(), num_hi.get(), den_lo.get(), MPFR_RNDU);
    } else {
      mpfr_div(lo.get(), num_lo.get(), den_lo.get(), MPFR_RNDD);
      mpfr_div(hi.get(), num_hi.get(), den_hi.get(), MPFR_RNDU);
    }
  }

  static BigRational parse_decimal(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      negative = s[0] == '-';
      s = s.substr(1);
    }
    auto dot = s.find('.');
    std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
    if ((whole + frac).empty()) throw PreconditionError("RealNumber: empty decimal");
    for (char ch : whole + frac)
      if (ch < '0' || ch > '9') throw PreconditionError("RealNumber: malformed decimal '" + text + "'");
    BigInt num(whole.empty() ? std::string("0") : whole);
    BigInt den = 1;
    for (char ch : frac) {
      num = num * 10 + (ch - '0');
      den *= 10;
    }
    BigRational q(num, den);
    return negative ? BigRational(-q) : q;
  }

 private:
  Encloser enclose_;
  std::optional<BigRational> exact_;
  std::string label_;
};

/// floor(x) if every point of [lo, hi] has the same floor.
inline std::optional<BigInt> common_floor(const BigFloat& lo, const BigFloat& hi) {
  BigInt a = lo.floor();
  BigInt b = hi.floor();
  if (a == b) return a;
  return std::nullopt;
}

/// Decides floor(n * alpha + beta) by widening precision until the
/// enclosure has a single floor. Exact rationals short-circuit.
inline BigInt floor_affine(const BigInt& n, const RealNumber& alpha, const RealNumber& beta,
                           const PrecisionLadder& ladder = {}) {
  if (alpha.exact() && beta.exact()) return floor_big(BigRational(n) * *alpha.exact() + *beta.exact());
  for (mpfr_prec_t p = ladder.start; p <= ladder.cap; p *= 2) {
    BigFloat a_lo(p), a_hi(p), b_lo(p), b_hi(p), lo(p), hi(p);
    BigFloat nn(std::max<mpfr_prec_t>(p, bit_length(n)));
    alpha.enclose(a_lo, a_hi);
    beta.enclose(b_lo, b_hi);
    set_integer(nn, n, MPFR_RNDN);
    if (mpfr_sgn(nn.get()) >= 0) {
      mpfr_mul(lo.get(), a_lo.get(), nn.get(), MPFR_RNDD);
      mpfr_mul(hi.get(), a_hi.get(), nn.get(), MPFR_RNDU);
    } else {
      mpfr_mul(lo.get(), a_hi.get(), nn.get(), MPFR_RNDD);
      mpfr_mul(hi.get(), a_lo.get(), nn.get(), MPFR_RNDU);
    }
    mpfr_add(lo.get(), lo.get(), b_lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), b_hi.get(), MPFR_RNDU);
    if (auto f = common_floor(lo, hi)) return *f;
  }
  throw PrecisionExhausted("floor(n*alpha+beta) undecided at " + std::to_string(ladder.cap) + " bits");
}

}  // namespace tmps
