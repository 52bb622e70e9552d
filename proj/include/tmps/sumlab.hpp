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

/// @file sumlab.hpp
/// Small-scale evaluation of the digit exponential sums over d (and over
/// alpha), plus checkers for the van der Corput inequality, the carry
/// lemma, and the correlation/Fourier identity.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "tmps/beatty.hpp"
#include "tmps/digits.hpp"
#include "tmps/errors.hpp"
#include "tmps/parallel.hpp"
#include "tmps/rational.hpp"

namespace tmps {

inline constexpr double kSumBudget = 1e7;  // N * D per run

struct SumParams {
  std::int64_t N = 1;
  double D = 1;
  double xi = 0;
  std::vector<int> a{1};
  std::uint64_t j_cap = 0;  // 0 selects 2^(ceil(log2(N D)) + 4)

  void validate() const {
    require(N >= 1, "SumParams: N must be >= 1");
    require(D >= 1, "SumParams: D must be >= 1");
    require(!a.empty() && a[0] == 1, "SumParams: a must be nonempty with a_0 = 1");
    for (int v : a) require(v == 0 || v == 1, "SumParams: a must be a 0/1 word");
    require(a.size() <= 32, "SumParams: L must be <= 32");
    require(std::isfinite(xi), "SumParams: xi must be finite");
    if (static_cast<double>(N) * D > kSumBudget) throw BudgetExceeded("N * D exceeds the 1e7 budget");
  }

  std::uint64_t effective_cap() const {
    if (j_cap != 0) return j_cap;
    const double nd = static_cast<double>(N) * D;
    const int bits = static_cast<int>(std::ceil(std::log2(std::max(nd, 1.0)))) + 4;
    return std::uint64_t{1} << std::min(bits, 62);
  }
};

/// The sampled offsets j < cap: 0, k 2^t for odd k < 16, and rho_i 2^t for
/// four fixed odd 20-bit rho_i. The set grows with cap and is closed under
/// doubling below 2 cap.
inline std::vector<std::uint64_t> sampled_offsets(std::uint64_t cap) {
  static const std::vector<std::uint64_t> seeds = [] {
    std::mt19937_64 rng(0x7a11u);
    std::vector<std::uint64_t> s;
    for (int k = 0; k < 4; ++k) s.push_back((rng() & 0xfffffULL) | 1ULL);
    return s;
  }();
  std::vector<std::uint64_t> base;
  for (std::uint64_t k = 1; k < 16; k += 2) base.push_back(k);
  base.insert(base.end(), seeds.begin(), seeds.end());
  std::vector<std::uint64_t> out;
  if (cap > 0) out.push_back(0);
  for (std::uint64_t b : base)
    for (unsigned t = 0; t < 63 && (b << t) >> t == b && (b << t) < cap; ++t) out.push_back(b << t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct S1Report {
  double value = 0;       // sampled-max lower bound of S_1
  double normalized = 0;  // value / (N D)
  std::int64_t d_count = 0;
  std::uint64_t j_cap = 0;
  std::size_t j_samples = 0;
  std::vector<double> per_d;  // d = ceil(D), ceil(D) + 1, ...
};

namespace detail {

// |sum_{n<N} e(1/2 sum_l a_l s(step(n+l) + shift_of(n+l))) e(n xi)| where the
// argument of s is given by `term(k)`.
template <typename Term>
double digit_sum_modulus(std::int64_t N, const std::vector<int>& a, double xi, Term&& term) {
  std::complex<double> acc = 0;
  const std::size_t L = a.size();
  std::vector<int> parity(static_cast<std::size_t>(N) + L);
  for (std::size_t k = 0; k < parity.size(); ++k) parity[k] = thue_morse(term(static_cast<std::int64_t>(k)));
  for (std::int64_t n = 0; n < N; ++n) {
    int p = 0;
    for (std::size_t l = 0; l < L; ++l)
      if (a[l]) p ^= parity[static_cast<std::size_t>(n) + l];
    const double s = p ? -1.0 : 1.0;
    acc += xi == 0.0 ? std::complex<double>(s, 0.0) : s * unit_turn(static_cast<double>(n) * xi);
  }
  return std::abs(acc);
}

}  // namespace detail

/// sum_{D <= d < 2D} max_{j in sampled_offsets(cap)} |sum_{n<N} e(1/2 sum_l a_l s((n+l)d + j)) e(n xi)|.
inline S1Report s1_direct(const SumParams& p, unsigned threads = 0) {
  p.validate();
  const std::uint64_t cap = p.effective_cap();
  const auto offsets = sampled_offsets(cap);
  const std::int64_t d_lo = static_cast<std::int64_t>(std::ceil(p.D));
  const std::int64_t d_hi = static_cast<std::int64_t>(std::ceil(2 * p.D));  // d < 2D
  const std::size_t count = d_hi > d_lo ? static_cast<std::size_t>(d_hi - d_lo) : 0;
  const auto vals = parallel_map(count, threads, [&](std::size_t k) {
    const std::uint64_t d = static_cast<std::uint64_t>(d_lo) + k;
    double best = 0;
    for (std::uint64_t j : offsets)
      best = std::max(best, detail::digit_sum_modulus(p.N, p.a, p.xi, [&](std::int64_t t) { return static_cast<std::uint64_t>(t) * d + j; }));
    return best;
  });
  S1Report out;
  for (double v : vals) out.value += v;
  out.per_d = vals;
  out.d_count = static_cast<std::int64_t>(count);
  out.normalized = out.value / (static_cast<double>(p.N) * p.D);
  out.j_cap = cap;
  out.j_samples = offsets.size();
  return out;
}

struct S1BeattyReport {
  double value = 0;
  double normalized = 0;
  std::int64_t grid = 0;
  std::uint64_t beta_cap = 0;
  std::size_t beta_samples = 0;
  std::vector<std::pair<Rational, double>> nodes;
};

/// Midpoint rule over alpha in [D, 2D] of the maximum over sampled integer
/// beta of the Beatty analogue. D is rounded to a 1/1024 grid.
inline S1BeattyReport s1_beatty_direct(const SumParams& p, std::int64_t grid, unsigned threads = 0) {
  p.validate();
  require(grid >= 1, "s1_beatty_direct: grid must be >= 1");
  if (static_cast<double>(p.N) * static_cast<double>(grid) > kSumBudget) throw BudgetExceeded("N * grid exceeds the 1e7 budget");
  const std::uint64_t cap = p.effective_cap();
  const auto offsets = sampled_offsets(cap);
  const Rational Dq(std::llround(p.D * 1024.0), 1024);
  const auto vals = parallel_map(static_cast<std::size_t>(grid), threads, [&](std::size_t k) {
    const Rational alpha = Dq + Dq * Rational(2 * static_cast<std::int64_t>(k) + 1, 2 * grid);
    double best = 0;
    for (std::uint64_t j : offsets) {
      const Rational beta(static_cast<std::int64_t>(j));
      best = std::max(best, detail::digit_sum_modulus(p.N, p.a, p.xi, [&](std::int64_t t) {
        return static_cast<std::uint64_t>(floor_affine(t, alpha, beta));
      }));
    }
    return std::pair<Rational, double>{alpha, best};
  });
  S1BeattyReport out;
  out.grid = grid;
  out.beta_cap = cap;
  out.beta_samples = offsets.size();
  double sum = 0;
  for (const auto& v : vals) sum += v.second;
  out.nodes = vals;
  out.value = sum * Dq.to_double() / static_cast<double>(grid);
  out.normalized = out.value / (static_cast<double>(p.N) * Dq.to_double());
  return out;
}

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

struct VdcReport {
  double lhs = 0;
  std::complex<double> rhs;
  bool holds = false;
  bool rhs_nonneg = false;
};

/// |sum a_n|^2 against ((N + K(R-1))/R) sum_{|r|<R} (1 - |r|/R) sum_n a_{n+Kr} conj(a_n).
inline VdcReport vdc_verify(const std::vector<std::complex<double>>& seq, std::int64_t K, std::int64_t R) {
  require(K >= 1 && R >= 1, "vdc_verify: need K >= 1 and R >= 1");
  const std::int64_t N = static_cast<std::int64_t>(seq.size());
  std::complex<double> total = 0;
  for (const auto& v : seq) total += v;
  VdcReport out;
  out.lhs = std::norm(total);
  std::complex<double> inner = 0;
  for (std::int64_t r = -(R - 1); r <= R - 1; ++r) {
    std::complex<double> corr = 0;
    for (std::int64_t n = 0; n < N; ++n) {
      const std::int64_t m = n + K * r;
      if (m >= 0 && m < N) corr += seq[static_cast<std::size_t>(m)] * std::conj(seq[static_cast<std::size_t>(n)]);
    }
    inner += (1.0 - static_cast<double>(std::abs(r)) / static_cast<double>(R)) * corr;
  }
  out.rhs = inner * (static_cast<double>(N + K * (R - 1)) / static_cast<double>(R));
  const double scale = std::max(1.0, std::abs(out.rhs));
  out.rhs_nonneg = std::abs(out.rhs.imag()) <= 1e-9 * scale && out.rhs.real() >= -1e-9 * scale;
  out.holds = out.lhs <= out.rhs.real() + 1e-9 * scale;
  return out;
}

struct CarryReport {
  std::int64_t count = 0;
  double bound = 0;
  bool holds = false;
};

/// Number of n in [0, N) for which some l < L has
/// s(F(n+l+r)) - s(F(n+l)) != s_lambda(F(n+l+r)) - s_lambda(F(n+l)),
/// F(k) = floor(k alpha + beta), against (r + L)(N alpha / 2^lambda + 2).
inline CarryReport carry_exceptions(std::int64_t r, std::int64_t L, std::int64_t N, unsigned lambda, const Rational& alpha,
                                    const Rational& beta) {
  require(alpha > Rational(0) && beta >= Rational(0), "carry_exceptions: need alpha > 0 and beta >= 0");
  require(r >= 0 && L >= 0 && N >= 0, "carry_exceptions: r, L, N must be >= 0");
  require(lambda <= 62, "carry_exceptions: lambda must be <= 62");
  CarryReport out;
  auto F = [&](std::int64_t k) { return static_cast<std::uint64_t>(floor_affine(k, alpha, beta)); };
  for (std::int64_t n = 0; n < N; ++n) {
    bool bad = false;
    for (std::int64_t l = 0; l < L && !bad; ++l) {
      const std::uint64_t hi = F(n + l + r), lo = F(n + l);
      const std::int64_t full = static_cast<std::int64_t>(sum_digits(hi)) - static_cast<std::int64_t>(sum_digits(lo));
      const std::int64_t cut = static_cast<std::int64_t>(sum_digits_truncated(hi, lambda)) -
                               static_cast<std::int64_t>(sum_digits_truncated(lo, lambda));
      bad = full != cut;
    }
    out.count += bad;
  }
  out.bound = static_cast<double>(r + L) * (static_cast<double>(N) * alpha.to_double() / std::ldexp(1.0, static_cast<int>(lambda)) + 2.0);
  out.holds = static_cast<double>(out.count) <= out.bound;
  return out;
}

/// |(1/M) sum_n f(n+t) conj(f(n)) - sum_h |fhat(h)|^2 e(h t / M)| for M-periodic f.
inline double correlation_residual(const std::vector<std::complex<double>>& f, std::int64_t t) {
  const std::int64_t M = static_cast<std::int64_t>(f.size());
  require(M >= 1, "correlation_residual: M must be >= 1");
  auto at = [&](std::int64_t k) { return f[static_cast<std::size_t>(((k % M) + M) % M)]; };
  std::complex<double> left = 0;
  for (std::int64_t n = 0; n < M; ++n) left += at(n + t) * std::conj(at(n));
  left /= static_cast<double>(M);
  std::complex<double> right = 0;
  for (std::int64_t h = 0; h < M; ++h) {
    std::complex<double> coef = 0;
    for (std::int64_t u = 0; u < M; ++u) coef += at(u) * unit_turn(-static_cast<double>((h * u) % M) / static_cast<double>(M));
    coef /= static_cast<double>(M);
    right += std::norm(coef) * unit_turn(static_cast<double>((((h * t) % M) + M) % M) / static_cast<double>(M));
  }
  return std::abs(left - right);
}

}  // namespace tmps
