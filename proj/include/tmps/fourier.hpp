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

/// @file fourier.hpp
/// Discrete Fourier coefficients of digit-sum phases
///
///   G_lambda^{i,b}(h, d) = 2^-lambda sum_{u < 2^lambda}
///       e( 1/2 sum_l b_l s_lambda(u + l d + i(l)) - h u / 2^lambda ),
///
/// evaluated directly (one pass plus FFT) or through the digit recurrence
/// that peels off the lowest binary digit of d. Also: the profile
/// transformations T, their weights, good digit positions of d and the
/// exact census of d by good-position sets.
///
/// The coefficient sequence b has two active windows [0, L) and [r, r + L);
/// profiles i are stored only on those windows.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "tmps/digits.hpp"
#include "tmps/errors.hpp"
#include "tmps/rational.hpp"

namespace tmps {

using Complex = std::complex<double>;

inline constexpr unsigned kMaxFourierLevel = 22;

/// The exponent m with 2^(m-5) <= L < 2^(m-4); the van der Corput spacing
/// exponent used with it is 2m.
inline unsigned block_exponent(unsigned L) {
  require(L >= 1, "block_exponent: L must be >= 1");
  return static_cast<unsigned>(std::bit_width(L)) + 4;
}

/// A sequence i with support in [0, K), K = r + L, stored on the windows
/// [0, L) and [r, r + L).
struct ShiftProfile {
  std::uint64_t r = 1;
  std::vector<std::uint64_t> head;  // i(0), ..., i(L-1)
  std::vector<std::uint64_t> tail;  // i(r), ..., i(r+L-1)

  unsigned L() const { return static_cast<unsigned>(head.size()); }
  std::uint64_t K() const { return r + head.size(); }

  static ShiftProfile zero(unsigned L, std::uint64_t r) {
    ShiftProfile p;
    p.r = r;
    p.head.assign(L, 0);
    p.tail.assign(L, 0);
    return p;
  }

  /// True if i(0) = 0, steps inside each window are 0 or 1, and the gap
  /// i(r) - i(L-1) is in [0, r - L + 1], so the windows extend to a member
  /// of I_K.
  bool valid() const {
    if (head.empty() || head.size() != tail.size() || r < head.size()) return false;
    if (head[0] != 0) return false;
    for (std::size_t l = 1; l < head.size(); ++l) {
      if (head[l] < head[l - 1] || head[l] - head[l - 1] > 1) return false;
      if (tail[l] < tail[l - 1] || tail[l] - tail[l - 1] > 1) return false;
    }
    if (tail[0] < head.back()) return false;
    return tail[0] - head.back() <= r - head.size() + 1;
  }

  friend bool operator==(const ShiftProfile&, const ShiftProfile&) = default;
};

/// Coefficients b on the windows [0, L) and [r, r + L). The two-block form
/// has b_l = a_l on the first window and b_{r+l} = -a_l on the second,
/// with a_0 = 1 and r >= L.
struct CoeffBlock {
  std::uint64_t r = 1;
  std::vector<int> head;
  std::vector<int> tail;

  unsigned L() const { return static_cast<unsigned>(head.size()); }

  static CoeffBlock two_block(const std::vector<int>& a, std::uint64_t r) {
    require(!a.empty(), "CoeffBlock: a must be nonempty");
    require(a[0] == 1, "CoeffBlock: a_0 must be 1");
    require(r >= a.size(), "CoeffBlock: r must be >= L");
    CoeffBlock b;
    b.r = r;
    b.head = a;
    b.tail.resize(a.size());
    for (std::size_t l = 0; l < a.size(); ++l) {
      require(a[l] == 0 || a[l] == 1, "CoeffBlock: a must be a 0/1 word");
      b.tail[l] = -a[l];
    }
    return b;
  }

  /// Arbitrary window contents; used for degenerate sequences.
  static CoeffBlock windows(std::vector<int> head, std::vector<int> tail, std::uint64_t r) {
    require(head.size() == tail.size() && !head.empty(), "CoeffBlock: windows must have equal nonzero length");
    require(r >= head.size(), "CoeffBlock: r must be >= L");
    CoeffBlock b;
    b.r = r;
    b.head = std::move(head);
    b.tail = std::move(tail);
    return b;
  }

  bool is_two_block() const {
    if (head.empty() || head[0] != 1 || r < head.size()) return false;
    for (std::size_t l = 0; l < head.size(); ++l)
      if ((head[l] != 0 && head[l] != 1) || tail[l] != -head[l]) return false;
    return true;
  }
};

struct FourierTable {
  unsigned lambda = 0;
  std::uint64_t d = 0;
  std::vector<Complex> entries;

  const Complex& at(std::int64_t h) const {
    const std::int64_t size = static_cast<std::int64_t>(entries.size());
    return entries[static_cast<std::size_t>(((h % size) + size) % size)];
  }
  double parseval_sum() const {
    double s = 0;
    for (const auto& g : entries) s += std::norm(g);
    return s;
  }
  double max_abs_sq() const {
    double m = 0;
    for (const auto& g : entries) m = std::max(m, std::norm(g));
    return m;
  }
};

namespace detail {

inline void check_pair(const ShiftProfile& i, const CoeffBlock& b) {
  require(i.L() == b.L() && i.r == b.r, "profile and coefficient windows must agree (L, r)");
  require(i.L() >= 1, "profile must have L >= 1");
}

/// Active (offset, coefficient parity) pairs: l d + i(l) and b_l mod 2.
struct ActiveTerm {
  std::uint64_t offset;
  unsigned parity;
};

inline std::vector<ActiveTerm> active_terms(const ShiftProfile& i, const CoeffBlock& b, std::uint64_t d) {
  std::vector<ActiveTerm> out;
  for (unsigned l = 0; l < i.L(); ++l) {
    if (b.head[l] & 1) out.push_back({static_cast<std::uint64_t>(l) * d + i.head[l], 1});
    if (b.tail[l] & 1) out.push_back({(i.r + l) * d + i.tail[l], 1});
  }
  return out;
}

/// In-place radix-2 transform, X[h] = sum_u x[u] e(-h u / n).
inline void fft_forward(std::vector<Complex>& x) {
  const std::size_t n = x.size();
  if (n <= 1) return;
  for (std::size_t k = 1, j = 0; k < n; ++k) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (k < j) std::swap(x[k], x[j]);
  }
  const unsigned bits = static_cast<unsigned>(std::countr_zero(n));
  std::vector<Complex> w(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) w[k] = unit_turn_dyadic(-static_cast<std::int64_t>(k), bits);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t s = 0; s < n; s += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex t = w[k * stride] * x[s + k + len / 2];
        x[s + k + len / 2] = x[s + k] - t;
        x[s + k] += t;
      }
    }
  }
}

}  // namespace detail

/// The +-1 source sequence u -> e(1/2 sum_l b_l s_lambda(u + l d + i(l))),
/// u < 2^lambda.
inline std::vector<int> digit_phase_sequence(unsigned lambda, const ShiftProfile& i, const CoeffBlock& b, std::uint64_t d) {
  detail::check_pair(i, b);
  require(lambda <= kMaxFourierLevel, "lambda exceeds the supported maximum of 22");
  const std::uint64_t size = std::uint64_t{1} << lambda;
  const std::uint64_t mask = size - 1;
  const auto terms = detail::active_terms(i, b, d);
  std::vector<int> out(size);
  for (std::uint64_t u = 0; u < size; ++u) {
    unsigned parity = 0;
    for (const auto& t : terms) parity ^= static_cast<unsigned>(std::popcount((u + t.offset) & mask)) & 1U;
    out[u] = parity ? -1 : 1;
  }
  return out;
}

/// G_lambda^{i,b}(h, d) for all h < 2^lambda via one pass and an FFT.
inline FourierTable fourier_direct(unsigned lambda, const ShiftProfile& i, const CoeffBlock& b, std::uint64_t d) {
  const auto seq = digit_phase_sequence(lambda, i, b, d);
  FourierTable table;
  table.lambda = lambda;
  table.d = d;
  table.entries.assign(seq.begin(), seq.end());
  detail::fft_forward(table.entries);
  const double scale = std::ldexp(1.0, -static_cast<int>(lambda));
  for (auto& g : table.entries) g *= scale;
  return table;
}

/// T_{d,e}^{(m)}(i)(l) = floor((i(l) + l d + e) / 2^m), d and e reduced
/// modulo 2^m.
inline ShiftProfile transform_profile(const ShiftProfile& i, unsigned m, std::uint64_t d, std::uint64_t e) {
  require(m <= 40, "transform_profile: m must be <= 40");
  const std::uint64_t mask = low_mask(m);
  d &= mask;
  e &= mask;
  ShiftProfile out;
  out.r = i.r;
  out.head.resize(i.L());
  out.tail.resize(i.L());
  for (unsigned l = 0; l < i.L(); ++l) {
    const unsigned __int128 a = static_cast<unsigned __int128>(i.head[l]) + static_cast<unsigned __int128>(l) * d + e;
    const unsigned __int128 c = static_cast<unsigned __int128>(i.tail[l]) + static_cast<unsigned __int128>(i.r + l) * d + e;
    out.head[l] = static_cast<std::uint64_t>(a >> m);
    out.tail[l] = static_cast<std::uint64_t>(c >> m);
  }
  return out;
}

/// Elementary weight f_{delta,eps}^{i,b} = e(1/2 sum_l b_l (i(l) + l delta + eps)), as +-1.
inline int elementary_weight(const ShiftProfile& i, const CoeffBlock& b, unsigned delta, unsigned eps) {
  detail::check_pair(i, b);
  unsigned parity = 0;
  for (unsigned l = 0; l < i.L(); ++l) {
    if (b.head[l] & 1) parity ^= static_cast<unsigned>((i.head[l] + l * delta + eps) & 1U);
    if (b.tail[l] & 1) parity ^= static_cast<unsigned>((i.tail[l] + (i.r + l) * delta + eps) & 1U);
  }
  return parity ? -1 : 1;
}

/// f_{d,e}^{(m),i,b}: product of elementary weights along the digit path,
/// the k-th factor taken at T_{d,e}^{(k)}(i).
inline int weight_product(const ShiftProfile& i, const CoeffBlock& b, unsigned m, std::uint64_t d, std::uint64_t e) {
  int w = 1;
  for (unsigned k = 0; k < m; ++k) {
    const ShiftProfile j = transform_profile(i, k, d, e);
    w *= elementary_weight(j, b, static_cast<unsigned>((d >> k) & 1U), static_cast<unsigned>((e >> k) & 1U));
  }
  return w;
}

namespace detail {

// Table at `level` from two tables at level - 1. `roots[k]` = e(-k / 2^top).
inline std::vector<Complex> fourier_level(unsigned level, unsigned top, const ShiftProfile& i, const CoeffBlock& b,
                                          std::uint64_t d, const std::vector<Complex>& roots) {
  if (level == 0) return {Complex(1.0, 0.0)};
  const unsigned delta = static_cast<unsigned>(d & 1U);
  const std::size_t size = std::size_t{1} << level;
  const std::size_t half = size >> 1;
  const std::size_t stride = std::size_t{1} << (top - level);
  std::vector<Complex> out(size, Complex(0.0, 0.0));
  for (unsigned eps = 0; eps < 2; ++eps) {
    const double f = 0.5 * elementary_weight(i, b, delta, eps);
    const ShiftProfile next{i.r, [&] {
      std::vector<std::uint64_t> v(i.L());
      for (unsigned l = 0; l < i.L(); ++l) v[l] = (i.head[l] + l * delta + eps) >> 1;
      return v;
    }(), [&] {
      std::vector<std::uint64_t> v(i.L());
      for (unsigned l = 0; l < i.L(); ++l) v[l] = (i.tail[l] + (i.r + l) * delta + eps) >> 1;
      return v;
    }()};
    const auto sub = fourier_level(level - 1, top, next, b, d >> 1, roots);
    if (eps == 0) {
      for (std::size_t h = 0; h < size; ++h) out[h] += f * sub[h & (half - 1)];
    } else {
      for (std::size_t h = 0; h < size; ++h) out[h] += f * roots[(h * stride) & ((std::size_t{1} << top) - 1)] * sub[h & (half - 1)];
    }
  }
  return out;
}

}  // namespace detail

/// G_lambda^{i,b}(h, d) for all h < 2^lambda, built bottom-up from
/// G_0 = 1 through G_lambda(h, 2d + delta) = 1/2 sum_eps e(-h eps / 2^lambda)
/// f_{delta,eps} G_{lambda-1}^{T_{delta,eps}(i)}(h, d).
inline FourierTable fourier_recursive(unsigned lambda, const ShiftProfile& i, const CoeffBlock& b, std::uint64_t d) {
  detail::check_pair(i, b);
  require(lambda <= kMaxFourierLevel, "lambda exceeds the supported maximum of 22");
  const std::size_t size = std::size_t{1} << lambda;
  std::vector<Complex> roots(size);
  for (std::size_t k = 0; k < size; ++k) roots[k] = unit_turn_dyadic(-static_cast<std::int64_t>(k), lambda);
  FourierTable table;
  table.lambda = lambda;
  table.d = d;
  table.entries = detail::fourier_level(lambda, lambda, i, b, d, roots);
  return table;
}

// ---------------------------------------------------------------------------
// Good positions
// ---------------------------------------------------------------------------

/// T_{d,0}^{(mu)}(i)(r) = floor((i(r) + r (d mod 2^mu)) / 2^mu).
inline std::uint64_t shifted_tail_value(const ShiftProfile& i, unsigned mu, std::uint64_t d) {
  const unsigned __int128 v = static_cast<unsigned __int128>(i.tail[0]) +
                              static_cast<unsigned __int128>(i.r) * (d & low_mask(mu));
  return static_cast<std::uint64_t>(v >> mu);
}

inline bool is_good_position(unsigned lambda, std::uint64_t d, const ShiftProfile& i, unsigned m, unsigned mu) {
  if (mu + m > lambda) return false;
  if (((d >> mu) & low_mask(m)) != 1) return false;
  return (shifted_tail_value(i, mu, d) & low_mask(m)) == 1;
}

/// All mu with 0 <= mu <= lambda - m, digits (d_{mu+m-1}, ..., d_mu) =
/// (0, ..., 0, 1), and T_{d,0}^{(mu)}(i)(r) = 1 mod 2^m.
inline std::vector<unsigned> good_positions(unsigned lambda, std::uint64_t d, const ShiftProfile& i, unsigned m) {
  require(m >= 1, "good_positions: m must be >= 1");
  require(lambda <= 63, "good_positions: lambda must be <= 63");
  require(!i.tail.empty(), "good_positions: profile must have L >= 1");
  std::vector<unsigned> out;
  if (lambda < m) return out;
  for (unsigned mu = 0; mu + m <= lambda; ++mu)
    if (is_good_position(lambda, d, i, m, mu)) out.push_back(mu);
  return out;
}

/// Starting points of the digit blocks of type 1 and 2 for x = nu_2(r).
struct PositionClasses {
  unsigned x = 0;
  unsigned lambda0 = 0;
  std::vector<unsigned> type1;
  std::vector<unsigned> type2;
};

inline PositionClasses position_classes(unsigned lambda, unsigned x, unsigned m) {
  require(x >= 1 && m >= 1, "position_classes: x and m must be >= 1");
  PositionClasses pc;
  pc.x = x;
  const unsigned outer = lambda / (2 * x), inner = x / m;
  pc.lambda0 = outer * inner;
  for (unsigned l1 = 0; l1 < outer; ++l1)
    for (unsigned l0 = 0; l0 < inner; ++l0) {
      pc.type1.push_back(2 * l1 * x + l0 * m);
      pc.type2.push_back((2 * l1 + 1) * x + l0 * m);
    }
  return pc;
}

/// Number of d < 2^lambda whose good set inside the type-2 positions has
/// exactly k elements, for a fixed k-subset: 2^(lambda - 2 m lambda0) (2^(2m) - 1)^(lambda0 - k).
inline BigInt good_set_count_formula(unsigned lambda, unsigned x, unsigned m, unsigned k) {
  const PositionClasses pc = position_classes(lambda, x, m);
  require(k <= pc.lambda0, "good_set_count_formula: k exceeds lambda0");
  require(lambda >= 2 * m * pc.lambda0, "good_set_count_formula: inconsistent parameters");
  return (BigInt(1) << (lambda - 2 * m * pc.lambda0)) * pow((BigInt(1) << (2 * m)) - 1, pc.lambda0 - k);
}

/// Histogram over subsets M of the type-2 positions (bit j of the index is
/// the j-th type-2 position) of #{d < 2^lambda : good set within A_2 = M}.
inline std::vector<std::uint64_t> good_set_histogram(unsigned lambda, unsigned m, const ShiftProfile& i) {
  require(i.valid(), "good_set_histogram: invalid profile");
  const unsigned x = static_cast<unsigned>(two_adic_valuation(i.r));
  require(lambda >= 2 * x, "good_set_histogram: need lambda >= 2 nu_2(r)");
  require(lambda <= 24, "good_set_histogram: brute force limited to lambda <= 24");
  const PositionClasses pc = position_classes(lambda, x, m);
  require(pc.type2.size() <= 16, "good_set_histogram: too many type-2 positions");
  std::vector<std::uint64_t> hist(std::size_t{1} << pc.type2.size(), 0);
  const std::uint64_t total = std::uint64_t{1} << lambda;
  for (std::uint64_t d = 0; d < total; ++d) {
    std::size_t mask = 0;
    for (std::size_t j = 0; j < pc.type2.size(); ++j)
      if (is_good_position(lambda, d, i, m, pc.type2[j])) mask |= std::size_t{1} << j;
    ++hist[mask];
  }
  return hist;
}

/// #{d < 2^lambda : the good positions of d inside A_2 are exactly M}.
inline std::uint64_t good_set_census(unsigned lambda, unsigned m, const ShiftProfile& i, const std::vector<unsigned>& M) {
  const unsigned x = static_cast<unsigned>(two_adic_valuation(i.r));
  const PositionClasses pc = position_classes(lambda, x, m);
  std::size_t mask = 0;
  for (unsigned mu : M) {
    auto it = std::find(pc.type2.begin(), pc.type2.end(), mu);
    require(it != pc.type2.end(), "good_set_census: M must be a subset of A_2");
    mask |= std::size_t{1} << (it - pc.type2.begin());
  }
  return good_set_histogram(lambda, m, i)[mask];
}

// ---------------------------------------------------------------------------
// Estimates
// ---------------------------------------------------------------------------

struct SavingReport {
  std::int64_t h = 0;
  double lhs = 0;  // |G_{z+m}^i(h, d 2^m + 1)|^2
  double rhs = 0;  // (1 - 2/4^m) max_e |G_z^{T_{1,e}^{(m)}(i)}(h, d)|^2
  bool holds = false;
};

namespace detail {

inline void check_saving_hypotheses(unsigned z, unsigned m, const ShiftProfile& i, const CoeffBlock& b, std::uint64_t d) {
  check_pair(i, b);
  require(b.is_two_block(), "saving: b must be a two-block sequence with a_0 = 1");
  require(i.valid(), "saving: invalid profile");
  require(m >= 5, "saving: m must be >= 5");
  const std::uint64_t res = i.tail[0] & low_mask(m);
  require(res == 1 || res == 2, "saving: need i(r) mod 2^m in {1, 2}");
  require(two_adic_valuation(i.r) >= 2 * m, "saving: need nu_2(r) >= 2m");
  require((std::uint64_t{1} << (m - 5)) <= i.L() && i.L() < (std::uint64_t{1} << (m - 4)), "saving: need 2^(m-5) <= L < 2^(m-4)");
  require(z + m <= 16, "saving: need z + m <= 16");
  require(d < (std::uint64_t{1} << z), "saving: need d < 2^z");
}

}  // namespace detail

/// All h < 2^(z+m) at once.
inline std::vector<SavingReport> saving_gap_sweep(unsigned z, unsigned m, const ShiftProfile& i, const CoeffBlock& b,
                                                  std::uint64_t d) {
  detail::check_saving_hypotheses(z, m, i, b, d);
  const FourierTable top = fourier_recursive(z + m, i, b, (d << m) + 1);
  std::vector<FourierTable> lower;
  for (std::uint64_t e = 0; e < (std::uint64_t{1} << m); ++e)
    lower.push_back(fourier_recursive(z, transform_profile(i, m, 1, e), b, d));
  const double factor = 1.0 - 2.0 / std::ldexp(1.0, 2 * static_cast<int>(m));
  std::vector<SavingReport> out(top.entries.size());
  for (std::size_t h = 0; h < top.entries.size(); ++h) {
    double best = 0;
    for (const auto& t : lower) best = std::max(best, std::norm(t.at(static_cast<std::int64_t>(h))));
    SavingReport& rep = out[h];
    rep.h = static_cast<std::int64_t>(h);
    rep.lhs = std::norm(top.entries[h]);
    rep.rhs = factor * best;
    rep.holds = rep.lhs <= rep.rhs + 1e-9;
  }
  return out;
}

inline SavingReport saving_gap_check(unsigned z, unsigned m, const ShiftProfile& i, const CoeffBlock& b, std::uint64_t d,
                                     std::int64_t h) {
  const auto sweep = saving_gap_sweep(z, m, i, b, d);
  const std::int64_t size = static_cast<std::int64_t>(sweep.size());
  SavingReport rep = sweep[static_cast<std::size_t>(((h % size) + size) % size)];
  rep.h = h;
  return rep;
}

struct DecayBudget {
  unsigned x = 0;
  unsigned lambda0 = 0;
  double bound = 0;          // 2^lambda (1 - 2/16^m)^lambda0
  double log2_bound = 0;
  double lower_bound = 0;    // lambda / (8m)
  bool hypotheses = false;   // 2m <= x <= lambda/4
  bool lower_bound_holds = false;
};

inline DecayBudget decay_budget(unsigned lambda, std::uint64_t r, unsigned m) {
  require(m >= 1 && r >= 1, "decay_budget: need m >= 1 and r >= 1");
  DecayBudget out;
  out.x = static_cast<unsigned>(two_adic_valuation(r));
  out.lambda0 = out.x == 0 ? 0 : position_classes(lambda, out.x, m).lambda0;
  const double eta = 2.0 / std::ldexp(1.0, 4 * static_cast<int>(m));
  out.log2_bound = lambda + out.lambda0 * std::log2(1.0 - eta);
  out.bound = std::exp2(out.log2_bound);
  out.lower_bound = static_cast<double>(lambda) / (8.0 * m);
  out.hypotheses = 2 * m <= out.x && 4 * out.x <= lambda;
  out.lower_bound_holds = out.lambda0 >= out.lower_bound;
  return out;
}

/// 2^(lambda - 2 m lambda0) sum_k C(lambda0, k) (2^(2m) - 1)^(lambda0 - k) (1 - 2/4^m)^k,
/// evaluated term by term in log space.
inline double decay_budget_sum(unsigned lambda, unsigned lambda0, unsigned m) {
  const double q = std::ldexp(1.0, 2 * static_cast<int>(m)) - 1.0;
  const double eta = 2.0 / std::ldexp(1.0, 2 * static_cast<int>(m));
  double total = 0;
  for (unsigned k = 0; k <= lambda0; ++k) {
    const double log_term = std::lgamma(lambda0 + 1.0) - std::lgamma(k + 1.0) - std::lgamma(lambda0 - k + 1.0) +
                            (lambda0 - k) * std::log(q) + k * std::log(1.0 - eta);
    total += std::exp(log_term + (static_cast<double>(lambda) - 2.0 * m * lambda0) * std::numbers::ln2);
  }
  return total;
}

struct SingleEstimateReport {
  unsigned k = 0;
  double max_sq = 0;
  double bound = 1;
  bool holds = true;
  double parseval = 1;
};

inline SingleEstimateReport single_estimate_check(unsigned lambda, const ShiftProfile& i, const CoeffBlock& b,
                                                  std::uint64_t d, unsigned m) {
  detail::check_pair(i, b);
  require(lambda <= 16, "single_estimate_check: lambda must be <= 16");
  require(b.is_two_block(), "single_estimate_check: b must be a two-block sequence with a_0 = 1");
  require(i.valid(), "single_estimate_check: invalid profile");
  require(m >= 5 && (std::uint64_t{1} << (m - 5)) <= i.L() && i.L() < (std::uint64_t{1} << (m - 4)),
          "single_estimate_check: need m >= 5 and 2^(m-5) <= L < 2^(m-4)");
  require(two_adic_valuation(i.r) >= 2 * m, "single_estimate_check: need nu_2(r) >= 2m");
  SingleEstimateReport out;
  out.k = static_cast<unsigned>(good_positions(lambda, d, i, m).size());
  const FourierTable table = fourier_recursive(lambda, i, b, d);
  out.max_sq = table.max_abs_sq();
  out.parseval = table.parseval_sum();
  out.bound = std::pow(1.0 - 2.0 / std::ldexp(1.0, 2 * static_cast<int>(m)), out.k);
  out.holds = out.max_sq <= out.bound + 1e-9;
  return out;
}

}  // namespace tmps
