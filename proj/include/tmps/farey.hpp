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

/// @file farey.hpp
/// Farey series F_n and the Farey dissection p(alpha)/q(alpha) of a real
/// alpha scaled by 2^-mu, found by Stern-Brocot descent.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "tmps/errors.hpp"
#include "tmps/rational.hpp"

namespace tmps {

struct FareyFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const FareyFraction&, const FareyFraction&) = default;
};

/// F_n restricted to [0, 1], in increasing order.
inline std::vector<FareyFraction> farey_sequence(std::int64_t n) {
  require(n >= 1 && n <= 100000, "farey_sequence: n must be in [1, 1e5]");
  std::vector<FareyFraction> out;
  std::int64_t a = 0, b = 1, c = 1, d = n;
  out.push_back({a, b});
  while (c <= n) {
    const std::int64_t k = (n + b) / d;
    out.push_back({c, d});
    const std::int64_t next_c = k * c - a, next_d = k * d - b;
    a = c, b = d, c = next_c, d = next_d;
  }
  return out;
}

/// Adjacent pairs of F_n on [0, 1].
inline std::vector<std::pair<FareyFraction, FareyFraction>> farey_neighbors(std::int64_t n) {
  require(n >= 1 && n <= 1000, "farey_neighbors: n must be in [1, 1000]");
  const auto seq = farey_sequence(n);
  std::vector<std::pair<FareyFraction, FareyFraction>> out;
  out.reserve(seq.size() - 1);
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) out.emplace_back(seq[k], seq[k + 1]);
  return out;
}

struct FareyApprox {
  BigInt p = 0;
  BigInt q = 1;
  unsigned mu = 0;
  unsigned sigma = 1;
  BigInt left_num = 0, left_den = 1;    // a/b
  BigInt right_num = 1, right_den = 1;  // c/d
};

/// Neighbours a/b <= t < c/d in F_n, for arbitrary rational t.
inline void farey_bracket(const BigRational& t, const BigInt& n, BigInt& a, BigInt& b, BigInt& c, BigInt& d) {
  require(n >= 1, "farey_bracket: order must be >= 1");
  a = floor_big(t);
  b = 1;
  c = a + 1;
  d = 1;
  const BigInt tn = numerator(t), td = denominator(t);
  // t = tn / td. Invariant: a/b <= t < c/d, b c - a d = 1.
  while (true) {
    bool moved = false;
    // Right moves: c/d <- (k a + c)/(k b + d) while t < (k a + c)/(k b + d).
    {
      const BigInt lhs = tn * b - a * td;  // td (t b - a) >= 0
      const BigInt rhs = c * td - tn * d;  // td (c - t d) > 0
      BigInt k = (n - d) / b;
      if (lhs > 0) {
        // k lhs < rhs  <=>  k <= ceil(rhs / lhs) - 1
        BigInt kmax = (rhs + lhs - 1) / lhs - 1;
        if (kmax < k) k = kmax;
      }
      if (k > 0) {
        c = k * a + c;
        d = k * b + d;
        moved = true;
      }
    }
    // Left moves: a/b <- (a + k c)/(b + k d) while (a + k c)/(b + k d) <= t.
    {
      const BigInt lhs = tn * b - a * td;
      const BigInt rhs = c * td - tn * d;
      BigInt k = (n - b) / d;
      const BigInt kmax = lhs / rhs;  // k rhs <= lhs
      if (kmax < k) k = kmax;
      if (k > 0) {
        a = a + k * c;
        b = b + k * d;
        moved = true;
      }
    }
    if (!moved) break;
  }
}

/// p(alpha)/q(alpha) from the neighbours a/b <= alpha/2^mu < c/d in
/// F_{2^(mu+sigma)}: a/b if alpha/2^mu lies left of the mediant, else c/d.
/// Guarantees |q alpha - p 2^mu| < 2^-sigma.
inline FareyApprox farey_approx_scaled(const BigRational& alpha, unsigned mu, unsigned sigma) {
  require(sigma >= 1, "farey_approx_scaled: sigma must be >= 1");
  require(mu + sigma <= 62, "farey_approx_scaled: mu + sigma must be <= 62");
  const BigRational t = alpha / BigRational(BigInt(1) << mu);
  const BigInt n = BigInt(1) << (mu + sigma);
  FareyApprox out;
  out.mu = mu;
  out.sigma = sigma;
  farey_bracket(t, n, out.left_num, out.left_den, out.right_num, out.right_den);
  const BigRational mediant(out.left_num + out.right_num, out.left_den + out.right_den);
  if (t < mediant) {
    out.p = out.left_num;
    out.q = out.left_den;
  } else {
    out.p = out.right_num;
    out.q = out.right_den;
  }
  return out;
}

inline FareyApprox farey_approx_scaled(const Rational& alpha, unsigned mu, unsigned sigma) {
  return farey_approx_scaled(alpha.to_big(), mu, sigma);
}

/// A double is a dyadic rational; this uses its exact value.
inline FareyApprox farey_approx_scaled(double alpha, unsigned mu, unsigned sigma) {
  require(std::isfinite(alpha), "farey_approx_scaled: alpha must be finite");
  int exp = 0;
  const double mant = std::frexp(alpha, &exp);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  BigRational value(scaled);
  const int shift = exp - 53;
  if (shift >= 0) value *= BigRational(BigInt(1) << shift);
  else value /= BigRational(BigInt(1) << -shift);
  return farey_approx_scaled(value, mu, sigma);
}

/// |q alpha - p 2^mu| as an exact rational.
inline BigRational dirichlet_error(const FareyApprox& fa, const BigRational& alpha) {
  BigRational e = BigRational(fa.q) * alpha - BigRational(fa.p * (BigInt(1) << fa.mu));
  return e < 0 ? BigRational(-e) : e;
}

}  // namespace tmps
