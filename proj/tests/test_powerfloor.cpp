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

#include "tmps/powerfloor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tmps/beatty.hpp"

namespace tmps {
namespace {

TEST(FloorPower, Examples) {
  const auto c32 = ExponentSpec::rational(3, 2);
  const auto c75 = ExponentSpec::rational(7, 5);
  EXPECT_EQ(floor_power(BigInt(1), c32), 1);
  EXPECT_EQ(floor_power(BigInt(1), c75), 1);
  EXPECT_EQ(floor_power(BigInt(0), c75), 0);
  EXPECT_EQ(floor_power(BigInt(4), c32), 8);
  EXPECT_EQ(floor_power(BigInt(10), c75), 25);
  EXPECT_EQ(BigInt(25) * 25 * 25 * 25 * 25, 9765625);
}

TEST(FloorPower, RootCertificate) {
  std::mt19937_64 rng(7);
  for (auto [p, q] : {std::pair{7u, 5u}, {3u, 2u}, {11u, 8u}, {13u, 10u}}) {
    const auto c = ExponentSpec::rational(p, q);
    for (int k = 0; k < 2000; ++k) {
      const BigInt n = rng() % 1000000000000ull;
      const BigInt m = floor_power(n, c);
      ASSERT_LE(pow(m, q), pow(n, p));
      ASSERT_GT(pow(m + 1, q), pow(n, p));
    }
  }
}

TEST(FloorPower, BoundaryCasesOnRealPath) {
  EXPECT_EQ(floor_power(BigInt(4), ExponentSpec::real("1.5")), 8);
  EXPECT_EQ(floor_power(BigInt(9), ExponentSpec::real("1.5")), 27);
  EXPECT_EQ(floor_power(BigInt(16), ExponentSpec::real("1.25")), 32);
  EXPECT_EQ(floor_power(BigInt(1024), ExponentSpec::real("1.4")), 16384);
  // Just below an exact power.
  EXPECT_EQ(floor_power(BigInt(1023), ExponentSpec::real("1.4")), floor_power(BigInt(1023), ExponentSpec::rational(7, 5)));
}

TEST(FloorPower, RealAndRationalPathsAgree) {
  const auto exact = ExponentSpec::rational(7, 5);
  const auto real = ExponentSpec::real("1.4");
  std::mt19937_64 rng(20260101);
  for (int k = 0; k < 20000; ++k) {
    const BigInt n = rng() % 1000000000000ull;
    ASSERT_EQ(floor_power(n, exact), floor_power(n, real)) << n;
  }
}

TEST(FloorPower, TinyLadderExhausts) {
  // (2^40)^(5/4) = 2^50 is settled by the perfect-power check even at 8 bits.
  EXPECT_EQ(floor_power(BigInt(1) << 40, ExponentSpec::real("1.25", PrecisionLadder{8, 8})), BigInt(1) << 50);
  // 3^(1.25) needs more than 4 bits to decide.
  EXPECT_THROW(floor_power(BigInt(3), ExponentSpec::real("1.25", PrecisionLadder{4, 4})), PrecisionExhausted);
}

TEST(ExponentSpec, Validation) {
  EXPECT_THROW(ExponentSpec::rational(2, 1), PreconditionError);
  EXPECT_THROW(ExponentSpec::rational(1, 1), PreconditionError);
  EXPECT_THROW(ExponentSpec::real("2.5"), PreconditionError);
  EXPECT_THROW(ExponentSpec::parse("abc"), PreconditionError);
  const auto c = ExponentSpec::parse("14/10");
  EXPECT_EQ(c.p(), 7u);
  EXPECT_EQ(c.q(), 5u);
  EXPECT_FALSE(ExponentSpec::parse("1.4").is_rational());
}

TEST(PowerFloor, FastPathMatchesExact) {
  for (auto [p, q] : {std::pair{7u, 5u}, {3u, 2u}, {5u, 4u}}) {
    const auto c = ExponentSpec::rational(p, q);
    const PowerFloor f(c);
    for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(BigInt(f(n)), floor_power(BigInt(n), c)) << n;
    std::mt19937_64 rng(p * 31 + q);
    for (int k = 0; k < 20000; ++k) {
      const std::uint64_t n = rng() % 100000000000ull;
      ASSERT_EQ(BigInt(f(n)), floor_power(BigInt(n), c)) << n;
    }
  }
}

TEST(Segment, EndpointValues) {
  const auto c32 = ExponentSpec::rational(3, 2);
  EXPECT_NEAR(linearize_segment(4, 5, c32).alpha.to_double(), 3.0, 1e-15);
  EXPECT_NEAR(linearize_segment(1, 1, c32).B.to_double(), 0.75, 1e-15);
  EXPECT_NEAR(linearize_segment(4, 5, c32).beta.to_double(), 8.0 - 12.0, 1e-15);
}

TEST(Segment, HighPrecisionValues) {
  const auto seg = linearize_segment(100, 10, ExponentSpec::rational(7, 5));
  const long double a = 100.0L, c = 1.4L;
  const long double alpha = c * std::pow(a, c - 1);
  const long double beta = std::pow(a, c) - a * alpha;
  const long double B = c * (c - 1) * std::pow(a, c - 2);
  EXPECT_NEAR(seg.alpha.to_double(), static_cast<double>(alpha), 1e-12);
  EXPECT_NEAR(seg.beta.to_double(), static_cast<double>(beta), 1e-12);
  EXPECT_NEAR(seg.B.to_double(), static_cast<double>(B), 1e-12);
  EXPECT_THROW(linearize_segment(0, 10, ExponentSpec::rational(7, 5)), PreconditionError);
}

TEST(Segment, MismatchCountAgainstDoubleOracle) {
  const auto c = ExponentSpec::rational(7, 5);
  auto seg = linearize_segment(100, 10, c);
  const double alpha = seg.alpha.to_double(), beta = seg.beta.to_double();
  std::uint64_t expected = 0;
  for (int n = 101; n <= 110; ++n)
    if (std::floor(std::pow(static_cast<double>(n), 1.4)) != std::floor(n * alpha + beta)) ++expected;
  EXPECT_EQ(linearization_mismatch_count(seg, c), expected);
  seg.K = 0;
  EXPECT_EQ(linearization_mismatch_count(seg, c), 0u);
}

TEST(Segment, MismatchBoundWithDiscrepancy) {
  const auto c = ExponentSpec::rational(7, 5);
  for (std::uint64_t a : {100000ull, 250000ull, 1000000ull}) {
    for (std::uint64_t K : {10ull, 100ull}) {
      const auto seg = linearize_segment(a, K, c);
      const double bound = 2 * seg.B.to_double() * K * K * K +
                           K * discrepancy(seg.alpha.to_double(), static_cast<std::int64_t>(K));
      EXPECT_LE(static_cast<double>(linearization_mismatch_count(seg, c)), bound) << a << " " << K;
    }
  }
}

TEST(Segment, TaylorErrorWithinBKSquared) {
  std::mt19937_64 rng(3);
  for (auto c : {ExponentSpec::rational(7, 5), ExponentSpec::rational(4, 3), ExponentSpec::real("1.45")}) {
    for (std::uint64_t a : {10ull, 1000ull, 123456ull}) {
      const std::uint64_t K = 50;
      const auto seg = linearize_segment(a, K, c);
      const double BK2 = seg.B.to_double() * K * K;
      std::uniform_real_distribution<double> dist(static_cast<double>(a), static_cast<double>(a + K));
      for (int k = 0; k < 1000; ++k) ASSERT_LE(std::abs(segment_line_error(seg, dist(rng), c)), BK2);
    }
  }
}

TEST(Segment, FloorsAgreeAwayFromIntegers) {
  const auto c = ExponentSpec::rational(7, 5);
  for (std::uint64_t a : {1000ull, 50000ull}) {
    const std::uint64_t K = 40;
    const auto seg = linearize_segment(a, K, c);
    const double BK2 = seg.B.to_double() * K * K;
    for (std::uint64_t n = a; n <= a + K; ++n) {
      const double v = static_cast<double>(n) * seg.alpha.to_double() + seg.beta.to_double();
      const double dist = std::abs(v - std::round(v));
      if (dist > BK2 + 1e-9) {
        ASSERT_EQ(floor_power(BigInt(n), c), segment_line_floor(seg, n)) << n;
      }
    }
  }
}

TEST(Segment, Partition) {
  const auto pts = segment_partition(100, 10, 3);
  ASSERT_FALSE(pts.empty());
  EXPECT_EQ(pts.front(), 100u);
  EXPECT_LE(pts.back() + 3, 200u);
  EXPECT_GT(pts.back() + 10 + 3, 200u);
}

}  // namespace
}  // namespace tmps
