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

/// @file beatty.hpp
/// Beatty sequences floor(n alpha + beta), the extreme discrepancy D_N of
/// n alpha modulo 1, and the counting and averaging statements built on it.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "tmps/digits.hpp"
#include "tmps/errors.hpp"
#include "tmps/rational.hpp"
#include "tmps/real.hpp"

namespace tmps {

/// log+ x = max(1, log x).
inline double log_plus(double x) { return x <= std::exp(1.0) ? 1.0 : std::log(x); }

/// alpha and beta of a Beatty sequence. The rational form is the fast exact
/// path; the real form goes through the precision ladder.
struct BeattyParams {
  std::variant<Rational, RealNumber> alpha = Rational(1);
  std::variant<Rational, RealNumber> beta = Rational(0);

  BeattyParams() = default;
  BeattyParams(Rational a, Rational b) : alpha(a), beta(b) {}
  BeattyParams(RealNumber a, RealNumber b) : alpha(std::move(a)), beta(std::move(b)) {}

  bool is_rational() const {
    return std::holds_alternative<Rational>(alpha) && std::holds_alternative<Rational>(beta);
  }
  const Rational& alpha_q() const { return std::get<Rational>(alpha); }
  const Rational& beta_q() const { return std::get<Rational>(beta); }

  RealNumber alpha_real() const { return as_real(alpha); }
  RealNumber beta_real() const { return as_real(beta); }

  double alpha_approx() const { return is_rational_part(alpha) ? std::get<Rational>(alpha).to_double() : std::get<RealNumber>(alpha).approx(); }
  double beta_approx() const { return is_rational_part(beta) ? std::get<Rational>(beta).to_double() : std::get<RealNumber>(beta).approx(); }

 private:
  static bool is_rational_part(const std::variant<Rational, RealNumber>& v) { return std::holds_alternative<Rational>(v); }
  static RealNumber as_real(const std::variant<Rational, RealNumber>& v) {
    if (auto* q = std::get_if<Rational>(&v)) return RealNumber(*q);
    return std::get<RealNumber>(v);
  }
};

/// floor(n alpha + beta).
inline BigInt beatty_term(std::int64_t n, const BeattyParams& bp, const PrecisionLadder& ladder = {}) {
  if (bp.is_rational()) return BigInt(floor_affine(n, bp.alpha_q(), bp.beta_q()));
  return floor_affine(BigInt(n), bp.alpha_real(), bp.beta_real(), ladder);
}

// ---------------------------------------------------------------------------
// Discrepancy
//
// D_N(alpha) = sup over arcs [y, y + x) of the circle of |#{n < N : {n alpha}
// in arc} / N - x|. For sorted distinct points v_0 < ... < v_{k-1} with
// multiplicities and cumulative counts C, the excess of a closed arc
// [v_i, v_j] is (C(j) - C(i-1))/N - (v_j - v_i), and the deficit of an open
// arc (v_i, v_j) is (v_j - v_i) - (C(j-1) - C(i))/N. Both split into a term
// in j minus a term in i, and both terms are k-periodic on the unrolled
// circle, so each supremum is a max minus a min over one period.
// ---------------------------------------------------------------------------

namespace detail {

// Scale-free core. Values are sorted ascending in [0, unit); counts are
// multiplicities; the returned numerator is over denominator N * unit.
template <typename Value>
Value discrepancy_scan(const std::vector<Value>& values, const std::vector<std::int64_t>& counts,
                       std::int64_t N, Value unit) {
  Value max_a{}, min_b{}, max_p{}, min_q{};
  bool first = true;
  std::int64_t before = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const std::int64_t through = before + counts[j];
    const Value a = static_cast<Value>(through) * unit - values[j] * static_cast<Value>(N);
    const Value b = static_cast<Value>(before) * unit - values[j] * static_cast<Value>(N);
    const Value p = values[j] * static_cast<Value>(N) - static_cast<Value>(before) * unit;
    const Value q = values[j] * static_cast<Value>(N) - static_cast<Value>(through) * unit;
    if (first) {
      max_a = a, min_b = b, max_p = p, min_q = q;
      first = false;
    } else {
      max_a = std::max(max_a, a), min_b = std::min(min_b, b);
      max_p = std::max(max_p, p), min_q = std::min(min_q, q);
    }
    before = through;
  }
  return std::max(max_a - min_b, max_p - min_q);
}

template <typename Value>
void group_sorted(std::vector<Value>& pts, std::vector<Value>& values, std::vector<std::int64_t>& counts) {
  std::sort(pts.begin(), pts.end());
  for (const Value& v : pts) {
    if (!values.empty() && values.back() == v) {
      ++counts.back();
    } else {
      values.push_back(v);
      counts.push_back(1);
    }
  }
}

}  // namespace detail

/// Exact D_N(alpha) for rational alpha.
inline Rational discrepancy_exact(const Rational& alpha, std::int64_t N) {
  require(N >= 1, "discrepancy: N must be >= 1");
  const std::int64_t b = alpha.den();
  std::int64_t a = alpha.num() % b;
  if (a < 0) a += b;
  std::vector<std::int64_t> values, counts;
  if (b <= 4 * N) {
    // Counting sort over the b residues.
    std::vector<std::int64_t> bucket(static_cast<std::size_t>(b), 0);
    std::int64_t r = 0;
    for (std::int64_t n = 0; n < N; ++n) {
      ++bucket[static_cast<std::size_t>(r)];
      r += a;
      if (r >= b) r -= b;
    }
    for (std::int64_t v = 0; v < b; ++v)
      if (bucket[static_cast<std::size_t>(v)] > 0) {
        values.push_back(v);
        counts.push_back(bucket[static_cast<std::size_t>(v)]);
      }
  } else {
    std::vector<std::int64_t> pts(static_cast<std::size_t>(N));
    for (std::int64_t n = 0; n < N; ++n) pts[static_cast<std::size_t>(n)] = static_cast<std::int64_t>((static_cast<int128>(n) * a) % b);
    detail::group_sorted(pts, values, counts);
  }
  const std::int64_t num = detail::discrepancy_scan<std::int64_t>(values, counts, N, b);
  return Rational::from128(num, static_cast<int128>(N) * b);
}

/// D_N(alpha) in double precision.
inline double discrepancy(double alpha, std::int64_t N) {
  require(N >= 1, "discrepancy: N must be >= 1");
  require(std::isfinite(alpha), "discrepancy: alpha must be finite");
  std::vector<double> pts(static_cast<std::size_t>(N)), values;
  std::vector<std::int64_t> counts;
  for (std::int64_t n = 0; n < N; ++n) {
    const double x = static_cast<double>(n) * alpha;
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    pts[static_cast<std::size_t>(n)] = f;
  }
  detail::group_sorted(pts, values, counts);
  return detail::discrepancy_scan<double>(values, counts, N, 1.0) / static_cast<double>(N);
}

inline double discrepancy(const Rational& alpha, std::int64_t N) { return discrepancy_exact(alpha, N).to_double(); }

// ---------------------------------------------------------------------------
// Fractional part helpers on exact rationals.
// ---------------------------------------------------------------------------

/// If ||a|| < eps <= ||b|| then floor(a + b) = <a> + floor(b).
inline bool floor_split_holds(const Rational& a, const Rational& b, const Rational& eps) {
  if (!(a.dist_to_int() < eps && b.dist_to_int() >= eps)) return true;  // hypothesis not met
  return (a + b).floor() == a.nearest() + b.floor();
}

/// ||n a|| <= n ||a||.
inline bool dist_scaling_holds(const Rational& a, std::int64_t n) {
  return (Rational(n) * a).dist_to_int() <= Rational(n) * a.dist_to_int();
}

/// If ||a|| < eps and 2 n eps < 1 then <n a> = n <a>.
inline bool nearest_scaling_holds(const Rational& a, std::int64_t n, const Rational& eps) {
  if (!(a.dist_to_int() < eps && Rational(2 * n) * eps < Rational(1))) return true;
  return (Rational(n) * a).nearest() == n * a.nearest();
}

// ---------------------------------------------------------------------------
// Counting in residue classes and fractional-part bins.
// ---------------------------------------------------------------------------

/// Number of integers n in [lo, hi) with t/T <= {n alpha + beta} < (t+1)/T
/// and floor(n alpha + beta) = k mod K.
inline std::int64_t interval_class_count(std::int64_t lo, std::int64_t hi, const Rational& alpha, const Rational& beta,
                                         std::int64_t t, std::int64_t T, std::int64_t k, std::int64_t K) {
  require(T >= 1 && 0 <= t && t < T, "interval_class_count: need 0 <= t < T");
  require(K >= 1 && 0 <= k && k < K, "interval_class_count: need 0 <= k < K");
  const Rational Ta = alpha * Rational(T), Tb = beta * Rational(T);
  std::int64_t count = 0;
  for (std::int64_t n = lo; n < hi; ++n) {
    const std::int64_t fl = floor_affine(n, alpha, beta);
    const std::int64_t bin = floor_affine(n, Ta, Tb) - T * fl;
    std::int64_t residue = fl % K;
    if (residue < 0) residue += K;
    if (bin == t && residue == k) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Mean discrepancy profiles
// ---------------------------------------------------------------------------

struct MeanDiscrepancyReport {
  unsigned mu = 0;
  std::int64_t N = 0;
  Rational sum;            // sum over d < 2^mu of D_N(d / 2^mu)
  double normalized = 0;   // sum * N / ((N + 2^mu) (log+ N)^2)
};

inline MeanDiscrepancyReport mean_discrepancy_profile(unsigned mu, std::int64_t N) {
  require(mu <= 16, "mean_discrepancy_profile: mu must be <= 16");
  require(N >= 1 && N <= (std::int64_t{1} << 16), "mean_discrepancy_profile: N must be in [1, 2^16]");
  const std::int64_t modulus = std::int64_t{1} << mu;
  // Every D_N(d / 2^mu) has a denominator dividing N 2^mu.
  const std::int64_t common = N * modulus;
  std::int64_t total = 0;
  for (std::int64_t d = 0; d < modulus; ++d) {
    const Rational D = discrepancy_exact(Rational(d, modulus), N);
    total += D.num() * (common / D.den());
  }
  MeanDiscrepancyReport out;
  out.mu = mu;
  out.N = N;
  out.sum = Rational(total, common);
  const double lp = log_plus(static_cast<double>(N));
  out.normalized = out.sum.to_double() * static_cast<double>(N) / (static_cast<double>(N + modulus) * lp * lp);
  return out;
}

struct GeometricSumReport {
  double sum = 0;        // sum_{k < 2^rho} |sum_{j in J} e(j m k / 2^rho)|
  double reference = 0;  // 2^{nu_2(m)} N + 2^rho log+ N
  double ratio = 0;
};

/// The geometric-sum statistic for J = [start, start + N).
inline GeometricSumReport mean_geometric_sum(std::int64_t start, std::int64_t N, std::int64_t m, unsigned rho) {
  require(m != 0, "mean_geometric_sum: m must be nonzero");
  require(rho <= 20 && N >= 0, "mean_geometric_sum: rho must be <= 20");
  const std::int64_t modulus = std::int64_t{1} << rho;
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(modulus));
  for (std::int64_t r = 0; r < modulus; ++r) roots[static_cast<std::size_t>(r)] = unit_turn_dyadic(r, rho);
  GeometricSumReport out;
  const std::int64_t mm = ((m % modulus) + modulus) % modulus;
  for (std::int64_t k = 0; k < modulus; ++k) {
    std::complex<double> acc = 0;
    const std::int64_t step = (mm * k) % modulus;
    std::int64_t phase = static_cast<std::int64_t>((static_cast<int128>(((start % modulus) + modulus) % modulus) * step) % modulus);
    for (std::int64_t j = 0; j < N; ++j) {
      acc += roots[static_cast<std::size_t>(phase)];
      phase += step;
      if (phase >= modulus) phase -= modulus;
    }
    out.sum += std::abs(acc);
  }
  const std::uint64_t absm = static_cast<std::uint64_t>(m < 0 ? -m : m);
  const double two_nu = std::ldexp(1.0, static_cast<int>(two_adic_valuation(absm)));
  out.reference = two_nu * static_cast<double>(N) + static_cast<double>(modulus) * log_plus(static_cast<double>(N));
  out.ratio = out.sum / out.reference;
  return out;
}

struct MeanDiscrepancyIntegral {
  std::int64_t N = 0;
  std::int64_t grid = 0;
  double integral = 0;    // midpoint rule over alpha in [0, 1]
  double normalized = 0;  // integral * N / (log+ N)^2
};

inline MeanDiscrepancyIntegral mean_discrepancy_integral(std::int64_t N, std::int64_t grid) {
  require(N >= 1 && grid >= 1, "mean_discrepancy_integral: N and grid must be positive");
  MeanDiscrepancyIntegral out;
  out.N = N;
  out.grid = grid;
  double acc = 0;
  for (std::int64_t k = 0; k < grid; ++k) acc += discrepancy_exact(Rational(2 * k + 1, 2 * grid), N).to_double();
  out.integral = acc / static_cast<double>(grid);
  const double lp = log_plus(static_cast<double>(N));
  out.normalized = out.integral * static_cast<double>(N) / (lp * lp);
  return out;
}

}  // namespace tmps
