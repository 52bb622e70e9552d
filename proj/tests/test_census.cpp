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

#include "tmps/census.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

namespace tmps {
namespace {

// A_omega straight from the definition: collect the Beatty values first,
// then test each m in the window.
std::int64_t oracle_beatty(std::int64_t y, std::int64_t z, const BigRational& alpha, const BigRational& beta, const Word& w) {
  std::map<BigInt, std::int64_t> index;  // m -> n
  for (std::int64_t n = -3; BigRational(n) * alpha + beta < BigRational(z + 1); ++n)
    index[floor_big(BigRational(n) * alpha + beta)] = n;
  std::int64_t count = 0;
  for (std::int64_t m = y; m < z; ++m) {
    auto it = index.find(BigInt(m));
    if (it == index.end()) continue;
    bool ok = true;
    for (unsigned l = 0; l < w.length(); ++l)
      ok = ok && static_cast<int>(sum_digits(floor_big(BigRational(it->second + l) * alpha + beta)) % 2) == w[l];
    count += ok;
  }
  return count;
}

// Arithmetic progression counterpart: m = j mod d, m >= 0, block on m + l d.
std::int64_t oracle_ap_block(std::int64_t z, std::int64_t d, std::int64_t j, const Word& w) {
  std::int64_t count = 0;
  for (std::int64_t m = 0; m < z; ++m) {
    if (m % d != j) continue;
    bool ok = true;
    for (unsigned l = 0; l < w.length(); ++l) {
      std::uint64_t v = static_cast<std::uint64_t>(m + l * d), bits = 0;
      while (v) bits += v & 1, v >>= 1;
      ok = ok && static_cast<int>(bits % 2) == w[l];
    }
    count += ok;
  }
  return count;
}

TEST(BlockCountBeatty, Prefix) {
  EXPECT_EQ(block_count_beatty(0, 16, BeattyParams(Rational(1), Rational(0)), Word::parse("0")), 8);
  EXPECT_EQ(block_count_beatty(0, 16, BeattyParams(Rational(1), Rational(0)), Word::parse("1")), 8);
  EXPECT_EQ(block_count_beatty(5, 5, BeattyParams(Rational(3), Rational(0)), Word::parse("0")), 0);
  EXPECT_THROW(block_count_beatty(0, 5, BeattyParams(Rational(1, 2), Rational(0)), Word::parse("0")), PreconditionError);
}

TEST(BlockCountBeatty, MatchesDefinition) {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 60; ++k) {
    const Rational alpha(1 + static_cast<std::int64_t>(rng() % 40), 1 + static_cast<std::int64_t>(rng() % 9));
    if (alpha < Rational(1)) continue;
    const Rational beta(static_cast<std::int64_t>(rng() % 30), 1 + static_cast<std::int64_t>(rng() % 7));
    const unsigned L = 1 + static_cast<unsigned>(rng() % 3);
    const Word w(L, static_cast<std::uint32_t>(rng() % (1u << L)));
    const std::int64_t y = static_cast<std::int64_t>(rng() % 300), z = y + static_cast<std::int64_t>(rng() % 2000);
    ASSERT_EQ(block_count_beatty(y, z, BeattyParams(alpha, beta), w), oracle_beatty(y, z, alpha.to_big(), beta.to_big(), w));
  }
}

TEST(BlockCountBeatty, RealPathMatchesRational) {
  const Word w = Word::parse("01");
  const BeattyParams q(Rational(22, 7), Rational(3, 2));
  const BeattyParams r(RealNumber(BigRational(22, 7)), RealNumber(BigRational(3, 2)));
  EXPECT_EQ(block_count_beatty(10, 3000, q, w), block_count_beatty(10, 3000, r, w));
  // An irrational slope against its definition on a rational sandwich is not
  // exact, so only the partition identity is checked here.
  const BeattyParams s(RealNumber::sqrt_of(2), RealNumber(BigRational(0)));
  std::int64_t total = 0;
  for (std::uint32_t code = 0; code < 4; ++code) total += block_count_beatty(0, 1000, s, Word(2, code));
  std::int64_t terms = 0;
  for (std::int64_t n = 0; beatty_term(n, s) < 1000; ++n) ++terms;
  EXPECT_EQ(total, terms);
}

TEST(BlockCountBeatty, IntegerSlopeIsArithmeticProgression) {
  std::mt19937_64 rng(52);
  for (int k = 0; k < 100; ++k) {
    const std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 64), j = static_cast<std::int64_t>(rng() % d);
    const unsigned L = 1 + static_cast<unsigned>(rng() % 3);
    const Word w(L, static_cast<std::uint32_t>(rng() % (1u << L)));
    const std::int64_t z = static_cast<std::int64_t>(rng() % 10001);
    ASSERT_EQ(block_count_beatty(0, z, BeattyParams(Rational(d), Rational(j)), w), oracle_ap_block(z, d, j, w));
  }
}

TEST(BlockCountAp, Examples) {
  EXPECT_EQ(block_count_ap(16, 1, 0), 8);
  EXPECT_EQ(block_count_ap(0, 5, 2), 0);
  const std::int64_t c = block_count_ap(100000, 7, 3);
  EXPECT_EQ(c, oracle_ap_block(100000, 7, 3, Word::parse("0")));
  EXPECT_LT(std::abs(static_cast<double>(c) - 100000.0 / 14), 1000.0);
  EXPECT_EQ(block_count_ap(Rational(101, 2), 3, 5), block_count_ap(51, 3, 2));
}

TEST(PsSequence, PrefixAndIndependentPath) {
  const auto c = ExponentSpec::rational(7, 5);
  const auto u = ps_sequence(0, 2, c);
  EXPECT_EQ(u[0], 0);
  EXPECT_EQ(u[1], 1);
  const auto real = ExponentSpec::real("1.4");
  std::mt19937_64 rng(53);
  for (int k = 0; k < 10000; ++k) {
    const std::uint64_t n = rng() % 100000000;
    ASSERT_EQ(ps_sequence(n, n + 1, c)[0], thue_morse(floor_power(BigInt(n), real))) << n;
  }
}

TEST(BlockCountPs, PartitionAndDirectCount) {
  const auto c = ExponentSpec::rational(7, 5);
  const auto one = block_count_ps(100000, c, 1, 2);
  EXPECT_EQ(one.total, 100000u);
  EXPECT_EQ(one.counts[0] + one.counts[1], 100000u);
  // Direct count through the exact integer root.
  const std::uint64_t N = 50000;
  std::vector<int> u(N + 2);
  for (std::uint64_t n = 0; n < u.size(); ++n) u[n] = thue_morse(floor_power(BigInt(n), c));
  std::vector<std::uint64_t> counts(8, 0);
  for (std::uint64_t n = 0; n < N; ++n) ++counts[u[n] | (u[n + 1] << 1) | (u[n + 2] << 2)];
  const auto rep = block_count_ps(N, c, 3, 3);
  EXPECT_EQ(rep.counts, counts);
  EXPECT_EQ(rep.count(Word::parse("011")), counts[0b110]);
  EXPECT_THROW(block_count_ps(kMaxPsLength + 1, c, 1), BudgetExceeded);
}

TEST(BlockCountPs, ThreadCountDoesNotMatter) {
  const auto c = ExponentSpec::rational(4, 3);
  EXPECT_EQ(block_count_ps(700000, c, 4, 1).counts, block_count_ps(700000, c, 4, 5).counts);
}

TEST(Normality, TrendAtDeskScale) {
  const auto rep = normality_report(ExponentSpec::rational(7, 5), 3, {10000, 100000, 1000000}, 0);
  ASSERT_EQ(rep.rows.size(), 3u);
  for (const auto& row : rep.rows) EXPECT_EQ(row.report.total, row.N);
  EXPECT_GT(rep.rows[0].report.max_dev, rep.rows[1].report.max_dev);
  EXPECT_GT(rep.rows[1].report.max_dev, rep.rows[2].report.max_dev);
  EXPECT_TRUE(rep.slope_defined);
  EXPECT_LT(rep.slope, 0);
  const auto l1 = normality_report(ExponentSpec::rational(7, 5), 1, {1000, 5000});
  for (const auto& row : l1.rows) EXPECT_EQ(row.report.counts[0] + row.report.counts[1], row.N);
  EXPECT_THROW(normality_report(ExponentSpec::rational(7, 5), 1, {100, 50}), PreconditionError);
}

TEST(LogLogSlope, PowerLaw) {
  const auto [s, ok] = loglog_slope({10, 100, 1000}, {1, 0.1, 0.01});
  EXPECT_TRUE(ok);
  EXPECT_NEAR(s, -1.0, 1e-12);
  EXPECT_FALSE(loglog_slope({10}, {1}).second);
}

TEST(ApAverage, EmptyRange) {
  const auto rep = ap_average_deviation(1000, 0.4, Word::parse("01"));
  EXPECT_TRUE(rep.samples.empty());
  EXPECT_EQ(rep.aggregate, 0.0);
}

TEST(ApAverage, MatchesBeattyCounterOverAllResidues) {
  const Word w = Word::parse("01");
  const std::int64_t x = 1000;
  const auto rep = ap_average_deviation(x, 10.0, w, {}, 2);
  ASSERT_EQ(rep.samples.size(), 10u);
  double total = 0;
  for (const auto& s : rep.samples) {
    const std::int64_t d = s.at.num();
    double best = 0;
    for (std::int64_t j = 0; j < d * 8; ++j)
      best = std::max(best, std::abs(static_cast<double>(block_count_beatty(0, x, BeattyParams(Rational(d), Rational(j)), w)) -
                                     static_cast<double>(x) / (4.0 * d)));
    EXPECT_DOUBLE_EQ(s.deviation, best) << d;
    total += s.deviation;
  }
  EXPECT_DOUBLE_EQ(rep.aggregate, total);
}

TEST(ApAverage, WindowGrid) {
  SamplingPolicy policy;
  policy.y_starts = {Rational(0), Rational(37, 2)};
  policy.length_fractions = {Rational(1), Rational(1, 2)};
  const auto wide = ap_average_deviation(2000, 20, Word::parse("1"), policy);
  const auto base = ap_average_deviation(2000, 20, Word::parse("1"));
  for (std::size_t k = 0; k < base.samples.size(); ++k) EXPECT_GE(wide.samples[k].deviation, base.samples[k].deviation);
  EXPECT_EQ(wide.policy["y_starts"][1], "37/2");
  policy.length_fractions = {Rational(3, 2)};
  EXPECT_THROW(ap_average_deviation(2000, 20, Word::parse("1"), policy), PreconditionError);
}

TEST(ApAverage, DecreasingNormalizedAggregate) {
  const Word w = Word::parse("01");
  const double a = ap_average_deviation(1000, std::pow(1000.0, 0.55), w).normalized;
  const double b = ap_average_deviation(10000, std::pow(10000.0, 0.55), w).normalized;
  EXPECT_GT(a, b);
}

TEST(BeattyAverage, IntegerNodesReproduceProgressionTerms) {
  const Word w = Word::parse("01");
  const auto beatty = beatty_average_deviation(3000, 10, w, 5, {}, 2);
  const auto ap = ap_average_deviation(3000, 10, w);
  ASSERT_EQ(beatty.samples.size(), 5u);
  for (const auto& node : beatty.samples) {
    ASSERT_EQ(node.at.den(), 1);
    const auto& match = ap.samples[static_cast<std::size_t>(node.at.num() - 11)];
    ASSERT_EQ(match.at, node.at);
    EXPECT_DOUBLE_EQ(node.deviation, match.deviation);
  }
  EXPECT_DOUBLE_EQ(beatty.weight, 2.0);
}

TEST(BeattyAverage, Aggregate) {
  const auto rep = beatty_average_deviation(10000, std::pow(10000.0, 0.55), Word::parse("01"), 16);
  double sum = 0;
  for (const auto& s : rep.samples) sum += s.deviation;
  EXPECT_NEAR(rep.aggregate, sum * rep.weight, 1e-9);
  EXPECT_GT(rep.aggregate, 0);
}

TEST(PsViaBeatty, ReportTerms) {
  const auto c = ExponentSpec::rational(7, 5);
  const Word w = Word::parse("010");
  const auto rep = ps_via_beatty_report(20000, 64, c, w, 8, 16, 2);
  std::uint64_t hits = 0;
  const auto u = ps_sequence(20001, 40003, c);
  for (std::size_t k = 0; k + 2 < u.size(); ++k) hits += u[k] == 0 && u[k + 1] == 1 && u[k + 2] == 0;
  EXPECT_NEAR(rep.lhs, std::abs(static_cast<double>(hits) / 20000.0 - 0.125), 1e-15);
  EXPECT_GT(rep.curvature, 0);
  EXPECT_NEAR(rep.log_term, std::pow(std::log(20000.0), 2) / 64, 1e-12);
  EXPECT_GE(rep.J_sampled, 0);
  EXPECT_LE(rep.J_sampled, 1);
  EXPECT_NEAR(rep.rhs_sum, rep.curvature + rep.log_term + rep.J_sampled, 1e-12);
}

}  // namespace
}  // namespace tmps
