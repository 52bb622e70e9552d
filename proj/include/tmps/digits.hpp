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

/// @file digits.hpp
/// Binary digit functions: the sum of digits s(n), its truncated and
/// two-fold restricted variants, the Thue-Morse sequence and the unit
/// circle map x -> exp(2 pi i x).

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tmps/errors.hpp"

namespace tmps {

using BigInt = boost::multiprecision::cpp_int;

/// Digit positions [mu, lambda) taken into account by a restricted digit sum.
struct DigitWindow {
  unsigned mu = 0;
  unsigned lambda = 0;

  constexpr DigitWindow() = default;
  constexpr DigitWindow(unsigned lo, unsigned hi) : mu(lo), lambda(hi) {
    if (lo > hi) throw PreconditionError("DigitWindow: mu must not exceed lambda");
  }
  constexpr unsigned width() const { return lambda - mu; }
};

constexpr unsigned sum_digits(std::uint64_t n) { return static_cast<unsigned>(std::popcount(n)); }

inline unsigned sum_digits(const BigInt& n) {
  if (n < 0) throw PreconditionError("sum_digits: negative argument");
  unsigned total = 0;
  const auto& backend = n.backend();
  const auto* limbs = backend.limbs();
  for (std::size_t k = 0; k < backend.size(); ++k) total += std::popcount(limbs[k]);
  return total;
}

constexpr std::uint64_t low_mask(unsigned bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// s_lambda(n): digits at positions below lambda.
constexpr unsigned sum_digits_truncated(std::uint64_t n, unsigned lambda) {
  return sum_digits(n & low_mask(lambda));
}

/// s_{mu,lambda}(n) = s_lambda(n) - s_mu(n).
constexpr unsigned sum_digits_window(std::uint64_t n, DigitWindow w) {
  if (w.mu >= 64) return 0;
  return sum_digits((n >> w.mu) & low_mask(w.width()));
}

inline unsigned sum_digits_window(const BigInt& n, DigitWindow w) {
  if (n < 0) throw PreconditionError("sum_digits_window: negative argument");
  if (n <= std::numeric_limits<std::uint64_t>::max() && w.lambda <= 64)
    return sum_digits_window(static_cast<std::uint64_t>(n), w);
  const unsigned top = std::min<unsigned>(w.lambda, static_cast<unsigned>(n == 0 ? 0 : msb(n) + 1));
  unsigned total = 0;
  for (unsigned k = w.mu; k < top; ++k) total += bit_test(n, k) ? 1 : 0;
  return total;
}

/// t_n, the n-th Thue-Morse symbol.
constexpr int thue_morse(std::uint64_t n) { return static_cast<int>(sum_digits(n) & 1U); }

inline int thue_morse(const BigInt& n) { return static_cast<int>(sum_digits(n) & 1U); }

/// (-1)^k as an integer.
constexpr int parity_sign(std::int64_t k) { return (k & 1) ? -1 : 1; }

/// e(x) = exp(2 pi i x). The integer part of x is removed first so that
/// large arguments keep their fractional precision.
inline std::complex<double> unit_turn(double x) {
  const double frac = x - std::floor(x);
  // Exact values on quarter turns.
  if (frac == 0.0) return {1.0, 0.0};
  if (frac == 0.25) return {0.0, 1.0};
  if (frac == 0.5) return {-1.0, 0.0};
  if (frac == 0.75) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

/// e(num / 2^bits) for an integer numerator; the phase is reduced exactly
/// modulo 2^bits before conversion.
inline std::complex<double> unit_turn_dyadic(std::int64_t num, unsigned bits) {
  const std::int64_t period = std::int64_t{1} << bits;
  std::int64_t r = num % period;
  if (r < 0) r += period;
  return unit_turn(std::ldexp(static_cast<double>(r), -static_cast<int>(bits)));
}

/// A binary block omega = (omega_0, ..., omega_{L-1}) with 1 <= L <= 32.
/// Bit l of code() is omega_l.
class Word {
 public:
  static constexpr unsigned kMaxLength = 32;

  Word() = default;

  Word(unsigned length, std::uint32_t code) : length_(length), code_(code) {
    if (length < 1 || length > kMaxLength) throw PreconditionError("Word: length must be in [1, 32]");
    if (length < 32 && (code >> length) != 0) throw PreconditionError("Word: code has bits beyond length");
  }

  explicit Word(const std::vector<int>& bits) {
    if (bits.empty() || bits.size() > kMaxLength) throw PreconditionError("Word: length must be in [1, 32]");
    length_ = static_cast<unsigned>(bits.size());
    for (unsigned l = 0; l < length_; ++l) {
      if (bits[l] != 0 && bits[l] != 1) throw PreconditionError("Word: bits must be 0 or 1");
      code_ |= static_cast<std::uint32_t>(bits[l]) << l;
    }
  }

  /// Parses "0110" (omega_0 first).
  static Word parse(std::string_view text) {
    std::vector<int> bits;
    for (char ch : text) {
      if (ch == ',' || ch == ' ') continue;
      if (ch != '0' && ch != '1') throw PreconditionError("Word: expected a string of 0/1");
      bits.push_back(ch - '0');
    }
    return Word(bits);
  }

  unsigned length() const { return length_; }
  std::uint32_t code() const { return code_; }
  int operator[](unsigned l) const { return static_cast<int>((code_ >> l) & 1U); }

  std::string str() const {
    std::string out;
    for (unsigned l = 0; l < length_; ++l) out.push_back(static_cast<char>('0' + (*this)[l]));
    return out;
  }

  std::vector<int> bits() const {
    std::vector<int> out(length_);
    for (unsigned l = 0; l < length_; ++l) out[l] = (*this)[l];
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  unsigned length_ = 1;
  std::uint32_t code_ = 0;
};

}  // namespace tmps
