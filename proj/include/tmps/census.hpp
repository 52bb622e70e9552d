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

/// @file census.hpp
/// Block-occurrence counts along Beatty sequences, arithmetic progressions
/// and floor(n^c), with the averaged deviations over moduli d and slopes
/// alpha. Unbounded maxima are replaced by finite grids; every report
/// carries the grid it used.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tmps/beatty.hpp"
#include "tmps/digits.hpp"
#include "tmps/errors.hpp"
#include "tmps/parallel.hpp"
#include "tmps/powerfloor.hpp"
#include "tmps/rational.hpp"

namespace tmps {

using ordered_json = nlohmann::ordered_json;

struct FreqReport {
  unsigned L = 1;
  std::vector<std::uint64_t> counts;  // indexed by Word::code()
  std::uint64_t total = 0;
  std::vector<double> deviations;     // |count/total - 2^-L|
  double max_dev = 0;

  static FreqReport from_counts(unsigned L, std::vector<std::uint64_t> counts) {
    FreqReport r;
    r.L = L;
    r.counts = std::move(counts);
    for (auto c : r.counts) r.total += c;
    const double target = std::ldexp(1.0, -static_cast<int>(L));
    r.deviations.resize(r.counts.size());
    for (std::size_t k = 0; k < r.counts.size(); ++k) {
      const double freq = r.total == 0 ? 0.0 : static_cast<double>(r.counts[k]) / static_cast<double>(r.total);
      r.deviations[k] = std::abs(freq - target);
      r.max_dev = std::max(r.max_dev, r.deviations[k]);
    }
    return r;
  }

  std::uint64_t count(const Word& w) const {
    require(w.length() == L, "FreqReport: word length mismatch");
    return counts[w.code()];
  }
};

/// Window choices standing in for the maxima over y, z (and beta on the
/// Beatty side). The maximum over j is exact: A_omega(y, z; d, j) depends on
/// j only through j mod d, and all residues are evaluated.
struct SamplingPolicy {
  std::vector<Rational> y_starts{Rational(0)};
  std::vector<Rational> length_fractions{Rational(1)};  // z - y = fraction * x
  std::int64_t beta_denominator = 1;  // beta in {k/F : 0 <= k < ceil(alpha) F}
  std::int64_t alpha_grid_denominator = 1024;  // D rounded to this grid

  void validate() const {
    require(!y_starts.empty() && !length_fractions.empty(), "SamplingPolicy: empty window grid");
    for (const auto& y : y_starts) require(y >= Rational(0), "SamplingPolicy: y must be >= 0");
    for (const auto& f : length_fractions)
      require(f > Rational(0) && f <= Rational(1), "SamplingPolicy: length fractions must lie in (0, 1]");
    require(beta_denominator >= 1, "SamplingPolicy: beta denominator must be >= 1");
    require(alpha_grid_denominator >= 1, "SamplingPolicy: alpha grid denominator must be >= 1");
  }

  ordered_json descriptor() const {
    ordered_json j;
    std::vector<std::string> ys, fs;
    for (const auto& y : y_starts) ys.push_back(y.str());
    for (const auto& f : length_fractions) fs.push_back(f.str());
    j["y_starts"] = ys;
    j["length_fractions"] = fs;
    j["j_rule"] = "all residues j mod d (exact maximum over j)";
    j["beta_rule"] = "k/F for 0 <= k < ceil(alpha)*F";
    j["beta_denominator"] = beta_denominator;
    j["alpha_grid_denominator"] = alpha_grid_denominator;
    return j;
  }
};

struct AverageSample {
  Rational at;        // d, or the alpha midpoint
  double deviation;   // max over the sampled windows (and beta)
};

struct AverageReport {
  std::int64_t x = 0;
  double D = 0;
  std::vector<AverageSample> samples;
  double weight = 1;      // quadrature weight per sample (1 for sums over d)
  double aggregate = 0;   // weight * sum of sample deviations
  double normalized = 0;  // aggregate / x
  ordered_json policy;
};

// ---------------------------------------------------------------------------
// Counters
// ---------------------------------------------------------------------------

namespace detail {

inline unsigned block_code(std::int64_t m, std::int64_t step, unsigned L) {
  unsigned code = 0;
  for (unsigned l = 0; l < L; ++l)
    code |= static_cast<unsigned>(thue_morse(static_cast<std::uint64_t>(m + static_cast<std::int64_t>(l) * step))) << l;
  return code;
}

// Integers m with y <= m < z.
inline std::pair<std::int64_t, std::int64_t> integer_window(const Rational& y, const Rational& z) {
  return {y.ceil(), std::max(y.ceil(), z.ceil())};
}

// Exact block match count on the rational Beatty sequence.
inline std::int64_t beatty_block_count(std::int64_t m_lo, std::int64_t m_hi, const Rational& alpha, const Rational& beta,
                                       const Word& omega) {
  if (m_lo >= m_hi) return 0;
  // First n with n alpha + beta >= m_lo.
  std::int64_t n = ((Rational(m_lo) - beta) / alpha).ceil();
  std::int64_t count = 0;
  const unsigned L = omega.length();
  for (;; ++n) {
    const std::int64_t m = floor_affine(n, alpha, beta);
    if (m >= m_hi) break;
    if (m < m_lo) continue;
    bool ok = true;
    for (unsigned l = 0; l < L && ok; ++l) {
      const std::int64_t t = l == 0 ? m : floor_affine(n + l, alpha, beta);
      ok = thue_morse(static_cast<std::uint64_t>(t)) == omega[l];
    }
    count += ok;
  }
  return count;
}

}  // namespace detail

/// A_omega(y, z; alpha, beta): integers y <= m < z on the Beatty sequence
/// whose block of L consecutive terms has Thue-Morse pattern omega.
inline std::int64_t block_count_beatty(const Rational& y, const Rational& z, const BeattyParams& bp, const Word& omega,
                                       const PrecisionLadder& ladder = {}) {
  require(Rational(0) <= y && y <= z, "block_count_beatty: need 0 <= y <= z");
  require(bp.alpha_approx() >= 1.0, "block_count_beatty: alpha must be >= 1");
  require(bp.beta_approx() >= 0.0, "block_count_beatty: beta must be >= 0");
  const auto [m_lo, m_hi] = detail::integer_window(y, z);
  if (bp.is_rational()) {
    require(bp.alpha_q() >= Rational(1), "block_count_beatty: alpha must be >= 1");
    return detail::beatty_block_count(m_lo, m_hi, bp.alpha_q(), bp.beta_q(), omega);
  }
  if (m_lo >= m_hi) return 0;
  std::int64_t n = static_cast<std::int64_t>(std::floor((static_cast<double>(m_lo) - bp.beta_approx()) / bp.alpha_approx())) - 2;
  std::int64_t count = 0;
  for (;; ++n) {
    const BigInt m = beatty_term(n, bp, ladder);
    if (m >= m_hi) break;
    if (m < m_lo) continue;
    bool ok = true;
    for (unsigned l = 0; l < omega.length() && ok; ++l) {
      const BigInt t = l == 0 ? m : beatty_term(n + l, bp, ladder);
      ok = thue_morse(t) == omega[l];
    }
    count += ok;
  }
  return count;
}

/// A(y; d, j) = #{0 <= m < y : s(m) even, m = j mod d}.
inline std::int64_t block_count_ap(const Rational& y, std::int64_t d, std::int64_t j) {
  require(d >= 1, "block_count_ap: d must be >= 1");
  const std::int64_t hi = std::max<std::int64_t>(0, y.ceil());
  std::int64_t start = j % d;
  if (start < 0) start += d;
  std::int64_t count = 0;
  for (std::int64_t m = start; m < hi; m += d) count += thue_morse(static_cast<std::uint64_t>(m)) == 0;
  return count;
}

/// u(n) = t(floor(n^c)) for lo <= n < hi.
inline std::vector<std::uint8_t> ps_sequence(std::uint64_t lo, std::uint64_t hi, const ExponentSpec& c) {
  require(lo <= hi, "ps_sequence: empty range order");
  const PowerFloor f(c);
  std::vector<std::uint8_t> out(hi - lo);
  for (std::uint64_t n = lo; n < hi; ++n) out[n - lo] = static_cast<std::uint8_t>(thue_morse(f(n)));
  return out;
}

namespace detail {

// Pattern counts of u over windows starting in [lo, hi).
inline std::vector<std::uint64_t> ps_window_counts(std::uint64_t lo, std::uint64_t hi, const ExponentSpec& c, unsigned L) {
  std::vector<std::uint64_t> counts(std::size_t{1} << L, 0);
  if (lo >= hi) return counts;
  const auto u = ps_sequence(lo, hi + L - 1, c);
  unsigned code = 0;
  const unsigned mask = (1U << L) - 1;
  // Bit l of the code is u(n + l).
  for (unsigned l = 0; l + 1 < L; ++l) code |= static_cast<unsigned>(u[l]) << l;
  for (std::uint64_t k = 0; k < hi - lo; ++k) {
    code = (code | (static_cast<unsigned>(u[k + L - 1]) << (L - 1))) & mask;
    ++counts[code];
    code >>= 1;
  }
  return counts;
}

inline std::vector<std::uint64_t> ps_counts_parallel(std::uint64_t lo, std::uint64_t hi, const ExponentSpec& c, unsigned L,
                                                     unsigned threads) {
  constexpr std::uint64_t kChunk = 1 << 18;
  const std::uint64_t span = hi > lo ? hi - lo : 0;
  const std::size_t chunks = static_cast<std::size_t>((span + kChunk - 1) / kChunk);
  const auto parts = parallel_map(chunks, threads, [&](std::size_t k) {
    const std::uint64_t a = lo + k * kChunk, b = std::min(hi, a + kChunk);
    return ps_window_counts(a, b, c, L);
  });
  std::vector<std::uint64_t> total(std::size_t{1} << L, 0);
  for (const auto& p : parts)
    for (std::size_t w = 0; w < p.size(); ++w) total[w] += p[w];
  return total;
}

}  // namespace detail

inline constexpr std::uint64_t kMaxPsLength = 100000000;

/// Frequencies of all 2^L blocks (u(n), ..., u(n+L-1)), n < N.
inline FreqReport block_count_ps(std::uint64_t N, const ExponentSpec& c, unsigned L, unsigned threads = 0) {
  require(L >= 1 && L <= 16, "block_count_ps: L must be in [1, 16]");
  if (N > kMaxPsLength) throw BudgetExceeded("block_count_ps: N exceeds 1e8");
  return FreqReport::from_counts(L, detail::ps_counts_parallel(0, N, c, L, threads));
}

struct NormalityRow {
  std::uint64_t N = 0;
  FreqReport report;
};

struct NormalityReport {
  std::vector<NormalityRow> rows;
  double slope = 0;  // least-squares slope of log max_dev against log N
  bool slope_defined = false;
};

/// Least-squares slope of log y against log x.
inline std::pair<double, bool> loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2) return {0.0, false};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (!(xs[k] > 0) || !(ys[k] > 0)) return {0.0, false};
    const double a = std::log(xs[k]), b = std::log(ys[k]);
    sx += a, sy += b, sxx += a * a, sxy += a * b;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) return {0.0, false};
  return {(n * sxy - sx * sy) / den, true};
}

inline NormalityReport normality_report(const ExponentSpec& c, unsigned L, const std::vector<std::uint64_t>& checkpoints,
                                        unsigned threads = 0) {
  require(!checkpoints.empty(), "normality_report: no checkpoints");
  require(L >= 1 && L <= 16, "normality_report: L must be in [1, 16]");
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    require(checkpoints[k] >= 1, "normality_report: checkpoints must be positive");
    if (k > 0) require(checkpoints[k] > checkpoints[k - 1], "normality_report: checkpoints must increase");
  }
  if (checkpoints.back() > kMaxPsLength) throw BudgetExceeded("normality_report: last checkpoint exceeds 1e8");
  NormalityReport out;
  std::vector<std::uint64_t> running(std::size_t{1} << L, 0);
  std::uint64_t prev = 0;
  std::vector<double> xs, ys;
  for (std::uint64_t N : checkpoints) {
    const auto part = detail::ps_counts_parallel(prev, N, c, L, threads);
    for (std::size_t w = 0; w < part.size(); ++w) running[w] += part[w];
    prev = N;
    out.rows.push_back({N, FreqReport::from_counts(L, running)});
    xs.push_back(static_cast<double>(N));
    ys.push_back(out.rows.back().report.max_dev);
  }
  std::tie(out.slope, out.slope_defined) = loglog_slope(xs, ys);
  return out;
}

// ---------------------------------------------------------------------------
// Averages over moduli and slopes
// ---------------------------------------------------------------------------

namespace detail {

// max over residues j of |A_omega(y, z; d, j) - (z - y)/(2^L d)| for one window.
inline double ap_window_deviation(std::int64_t d, const Word& omega, const Rational& y, const Rational& z) {
  const auto [lo, hi] = integer_window(y, z);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(d), 0);
  const unsigned L = omega.length();
  const unsigned target = omega.code();
  std::int64_t residue = lo % d;
  for (std::int64_t m = lo; m < hi; ++m) {
    if (block_code(m, d, L) == target) ++counts[static_cast<std::size_t>(residue)];
    if (++residue == d) residue = 0;
  }
  const double expected = (z - y).to_double() / (std::ldexp(1.0, static_cast<int>(L)) * static_cast<double>(d));
  double best = 0;
  for (auto c : counts) best = std::max(best, std::abs(static_cast<double>(c) - expected));
  return best;
}

inline std::vector<std::pair<Rational, Rational>> policy_windows(std::int64_t x, const SamplingPolicy& policy) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& y : policy.y_starts)
    for (const auto& f : policy.length_fractions) out.emplace_back(y, y + f * Rational(x));
  return out;
}

}  // namespace detail

inline constexpr std::int64_t kMaxAverageX = 1000000;

/// Sum over integers d in (D, 2D] of the sampled maximum deviation of
/// A_omega(y, z; d, j) from (z - y)/(2^L d).
inline AverageReport ap_average_deviation(std::int64_t x, double D, const Word& omega, const SamplingPolicy& policy = {},
                                          unsigned threads = 0) {
  require(x >= 1, "ap_average_deviation: x must be >= 1");
  if (x > kMaxAverageX) throw BudgetExceeded("ap_average_deviation: x exceeds 1e6");
  require(D >= 0 && D <= static_cast<double>(x), "ap_average_deviation: need 0 <= D <= x");
  policy.validate();
  const auto windows = detail::policy_windows(x, policy);
  const std::int64_t d_lo = static_cast<std::int64_t>(std::floor(D)) + 1;
  const std::int64_t d_hi = static_cast<std::int64_t>(std::floor(2 * D));
  const std::size_t count = d_hi >= d_lo ? static_cast<std::size_t>(d_hi - d_lo + 1) : 0;
  const auto devs = parallel_map(count, threads, [&](std::size_t k) {
    const std::int64_t d = d_lo + static_cast<std::int64_t>(k);
    double best = 0;
    for (const auto& [y, z] : windows) best = std::max(best, detail::ap_window_deviation(d, omega, y, z));
    return best;
  });
  AverageReport out;
  out.x = x;
  out.D = D;
  out.policy = policy.descriptor();
  for (std::size_t k = 0; k < count; ++k) {
    out.samples.push_back({Rational(d_lo + static_cast<std::int64_t>(k)), devs[k]});
    out.aggregate += devs[k];
  }
  out.normalized = out.aggregate / static_cast<double>(x);
  return out;
}

/// Midpoint rule for the integral over alpha in [D, 2D] of the sampled
/// maximum deviation of A_omega(y, z; alpha, beta) from (z - y)/(2^L alpha).
/// D is rounded to the policy's alpha grid so every node is an exact
/// rational.
inline AverageReport beatty_average_deviation(std::int64_t x, double D, const Word& omega, std::int64_t grid,
                                              const SamplingPolicy& policy = {}, unsigned threads = 0) {
  require(x >= 1 && grid >= 1, "beatty_average_deviation: x and grid must be >= 1");
  if (x > kMaxAverageX) throw BudgetExceeded("beatty_average_deviation: x exceeds 1e6");
  require(D >= 1 && D <= static_cast<double>(x), "beatty_average_deviation: need 1 <= D <= x");
  policy.validate();
  const std::int64_t G = policy.alpha_grid_denominator;
  const Rational Dq(static_cast<std::int64_t>(std::llround(D * static_cast<double>(G))), G);
  const auto windows = detail::policy_windows(x, policy);
  const double scale = std::ldexp(1.0, static_cast<int>(omega.length()));
  const auto nodes = parallel_map(static_cast<std::size_t>(grid), threads, [&](std::size_t k) {
    const Rational alpha = Dq + Dq * Rational(2 * static_cast<std::int64_t>(k) + 1, 2 * grid);
    const std::int64_t F = policy.beta_denominator;
    const std::int64_t betas = alpha.ceil() * F;
    double best = 0;
    for (std::int64_t b = 0; b < betas; ++b) {
      const Rational beta(b, F);
      for (const auto& [y, z] : windows) {
        const auto [lo, hi] = detail::integer_window(y, z);
        const double count = static_cast<double>(detail::beatty_block_count(lo, hi, alpha, beta, omega));
        best = std::max(best, std::abs(count - (z - y).to_double() / (scale * alpha.to_double())));
      }
    }
    return AverageSample{alpha, best};
  });
  AverageReport out;
  out.x = x;
  out.D = Dq.to_double();
  out.policy = policy.descriptor();
  out.weight = Dq.to_double() / static_cast<double>(grid);
  double sum = 0;
  for (const auto& s : nodes) {
    out.samples.push_back(s);
    sum += s.deviation;
  }
  out.aggregate = sum * out.weight;
  out.normalized = out.aggregate / static_cast<double>(x);
  return out;
}

// ---------------------------------------------------------------------------
// Replacing floor(n^c) by Beatty pieces
// ---------------------------------------------------------------------------

struct PsViaBeattyReport {
  std::uint64_t N = 0;
  std::uint64_t K = 0;
  double lhs = 0;           // |#{n in (N, 2N] : block = omega}/N - 2^-L|
  double curvature = 0;     // f''(N) K^2
  double log_term = 0;      // (log N)^2 / K
  double J_sampled = 0;     // sampled J(N, K), a lower approximation of the true J
  double rhs_sum = 0;       // sum of the three terms (constant 1)
  std::int64_t alpha_grid = 0;
  std::int64_t beta_samples = 0;
};

/// Left side and the three right-side terms for one (N, K). J is sampled:
/// midpoint alpha nodes on [f'(N), f'(2N)] and beta on an even grid over
/// (f(N), f(2N)], both rounded to dyadic rationals.
inline PsViaBeattyReport ps_via_beatty_report(std::uint64_t N, std::uint64_t K, const ExponentSpec& c, const Word& omega,
                                              std::int64_t alpha_grid = 32, std::int64_t beta_samples = 64,
                                              unsigned threads = 0) {
  require(N >= 2 && K >= 1, "ps_via_beatty_report: need N >= 2 and K >= 1");
  require(alpha_grid >= 1 && beta_samples >= 1, "ps_via_beatty_report: grids must be positive");
  if (2 * N + omega.length() > kMaxPsLength) throw BudgetExceeded("ps_via_beatty_report: N exceeds budget");
  if (static_cast<double>(K) * static_cast<double>(alpha_grid * beta_samples) > 1e9)
    throw BudgetExceeded("ps_via_beatty_report: K * grid exceeds budget");
  const unsigned L = omega.length();
  const double cc = c.approx(), n = static_cast<double>(N);
  PsViaBeattyReport out;
  out.N = N;
  out.K = K;
  out.alpha_grid = alpha_grid;
  out.beta_samples = beta_samples;
  const auto counts = detail::ps_counts_parallel(N + 1, 2 * N + 1, c, L, threads);
  const double delta = std::ldexp(1.0, -static_cast<int>(L));
  out.lhs = std::abs(static_cast<double>(counts[omega.code()]) / n - delta);
  out.curvature = cc * (cc - 1) * std::pow(n, cc - 2) * static_cast<double>(K) * static_cast<double>(K);
  out.log_term = std::log(n) * std::log(n) / static_cast<double>(K);
  const double a0 = cc * std::pow(n, cc - 1), a1 = cc * std::pow(2 * n, cc - 1);
  const double b0 = std::pow(n, cc), b1 = std::pow(2 * n, cc);
  constexpr std::int64_t kAlphaDen = std::int64_t{1} << 30, kBetaDen = std::int64_t{1} << 16;
  const auto per_alpha = parallel_map(static_cast<std::size_t>(alpha_grid), threads, [&](std::size_t k) {
    const double a = a0 + (a1 - a0) * (static_cast<double>(k) + 0.5) / static_cast<double>(alpha_grid);
    const Rational alpha(std::llround(a * static_cast<double>(kAlphaDen)), kAlphaDen);
    double best = 0;
    for (std::int64_t j = 0; j < beta_samples; ++j) {
      const double b = b0 + (b1 - b0) * (static_cast<double>(j) + 1.0) / static_cast<double>(beta_samples);
      const Rational beta(std::llround(b * static_cast<double>(kBetaDen)), kBetaDen);
      std::int64_t hits = 0;
      for (std::uint64_t t = 0; t < K; ++t) {
        bool ok = true;
        for (unsigned l = 0; l < L && ok; ++l)
          ok = thue_morse(static_cast<std::uint64_t>(floor_affine(static_cast<std::int64_t>(t + l), alpha, beta))) == omega[l];
        hits += ok;
      }
      best = std::max(best, std::abs(static_cast<double>(hits) / static_cast<double>(K) - delta));
    }
    return best;
  });
  double sum = 0;
  for (double v : per_alpha) sum += v;
  out.J_sampled = sum / static_cast<double>(alpha_grid);
  out.rhs_sum = out.curvature + out.log_term + out.J_sampled;
  return out;
}

}  // namespace tmps
