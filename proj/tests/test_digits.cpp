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

#include "tmps/digits.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>

namespace tmps {
namespace {

unsigned bit_loop(std::uint64_t n) {
  unsigned c = 0;
  while (n) {
    c += n % 2;
    n /= 2;
  }
  return c;
}

TEST(SumDigits, SmallValues) {
  EXPECT_EQ(sum_digits(std::uint64_t{0}), 0u);
  EXPECT_EQ(sum_digits(std::uint64_t{255}), 8u);
  EXPECT_EQ(sum_digits(std::uint64_t{6}), 2u);
}

TEST(SumDigits, MatchesBitLoopBelow2To20) {
  for (std::uint64_t n = 0; n < (1u << 20); ++n) ASSERT_EQ(sum_digits(n), bit_loop(n)) << n;
}

TEST(SumDigits, BigIntegerPath) {
  BigInt n = (BigInt(1) << 200) + (BigInt(1) << 70) + 5;
  EXPECT_EQ(sum_digits(n), 4u);
  EXPECT_EQ(sum_digits(BigInt(0)), 0u);
  EXPECT_EQ(sum_digits((BigInt(1) << 130) - 1), 130u);
  EXPECT_THROW(sum_digits(BigInt(-1)), PreconditionError);
}

TEST(SumDigitsWindow, Examples) {
  EXPECT_EQ(sum_digits_window(std::uint64_t{17}, DigitWindow(0, 4)), 1u);
  EXPECT_EQ(sum_digits_window(std::uint64_t{13}, DigitWindow(2, 4)), 2u);
  EXPECT_THROW(DigitWindow(3, 2), PreconditionError);
}

TEST(SumDigitsWindow, DifferenceOfTruncations) {
  for (unsigned lambda = 0; lambda <= 16; ++lambda)
    for (unsigned mu = 0; mu <= lambda; ++mu)
      for (std::uint64_t n = 0; n < (1u << 16); n += 7)
        ASSERT_EQ(sum_digits_window(n, DigitWindow(mu, lambda)),
                  sum_digits_truncated(n, lambda) - sum_digits_truncated(n, mu));
}

TEST(SumDigitsWindow, FullDifferenceExhaustiveAt16) {
  for (std::uint64_t n = 0; n < (1u << 16); ++n)
    for (unsigned mu = 0; mu <= 16; mu += 3)
      ASSERT_EQ(sum_digits_window(n, DigitWindow(mu, 16)), bit_loop(n >> mu));
}

TEST(SumDigitsWindow, Periodic) {
  for (unsigned lambda = 0; lambda <= 12; ++lambda)
    for (unsigned mu = 0; mu <= lambda; ++mu)
      for (std::uint64_t n = 0; n < (1u << lambda) + 3; ++n)
        ASSERT_EQ(sum_digits_window(n + (std::uint64_t{1} << lambda), DigitWindow(mu, lambda)),
                  sum_digits_window(n, DigitWindow(mu, lambda)));
}

TEST(SumDigitsWindow, BigIntegerAgreesWithMachinePath) {
  for (std::uint64_t n : {0ull, 1ull, 12345ull, 0xfedcba9876543210ull})
    for (unsigned mu = 0; mu <= 64; mu += 8)
      EXPECT_EQ(sum_digits_window(BigInt(n), DigitWindow(mu, 64)), sum_digits_window(n, DigitWindow(mu, 64)));
  BigInt big = (BigInt(1) << 100) | (BigInt(1) << 80) | 1;
  EXPECT_EQ(sum_digits_window(big, DigitWindow(64, 128)), 2u);
  EXPECT_EQ(sum_digits_window(big, DigitWindow(0, 90)), 2u);
}

TEST(ThueMorse, FirstSixteen) {
  const int expected[16] = {0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0};
  for (std::uint64_t n = 0; n < 16; ++n) EXPECT_EQ(thue_morse(n), expected[n]);
}

TEST(ThueMorse, ParityAndDoubling) {
  for (std::uint64_t n = 0; n < (1u << 20); ++n) {
    ASSERT_EQ(thue_morse(n), static_cast<int>(bit_loop(n) % 2));
    if (n < (1u << 19)) {
      ASSERT_EQ(thue_morse(2 * n), thue_morse(n));
      ASSERT_EQ(thue_morse(2 * n + 1), 1 - thue_morse(n));
    }
  }
}

TEST(UnitTurn, QuarterTurnsAndPeriod) {
  EXPECT_EQ(unit_turn(0.0), std::complex<double>(1, 0));
  EXPECT_EQ(unit_turn(0.5), std::complex<double>(-1, 0));
  EXPECT_EQ(unit_turn(0.25), std::complex<double>(0, 1));
  for (double x : {0.1, -3.7, 12345.678, 1e6 + 0.3, -0.999}) {
    EXPECT_NEAR(std::abs(unit_turn(x)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(unit_turn(x + 1) - unit_turn(x)), 0.0, 1e-12);
  }
}

TEST(UnitTurn, DyadicMatchesReal) {
  for (std::int64_t k = -40; k < 40; ++k)
    EXPECT_NEAR(std::abs(unit_turn_dyadic(k, 4) - std::polar(1.0, 2 * M_PI * k / 16.0)), 0.0, 1e-12);
}

TEST(Word, ParseAndAccess) {
  Word w = Word::parse("0110");
  EXPECT_EQ(w.length(), 4u);
  EXPECT_EQ(w[0], 0);
  EXPECT_EQ(w[1], 1);
  EXPECT_EQ(w.str(), "0110");
  EXPECT_THROW(Word::parse(""), PreconditionError);
  EXPECT_THROW(Word::parse("012"), PreconditionError);
  EXPECT_THROW(Word(std::vector<int>(33, 0)), PreconditionError);
}

}  // namespace
}  // namespace tmps
