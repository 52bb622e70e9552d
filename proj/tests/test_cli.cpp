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

#include "tmps/cli.hpp"

#include <gtest/gtest.h>

#include <random>

namespace tmps {
namespace {

RunConfig config(std::string command, std::map<std::string, std::string> params = {}, unsigned threads = 1) {
  RunConfig cfg;
  cfg.command = std::move(command);
  cfg.params = std::move(params);
  cfg.threads = threads;
  return cfg;
}

ordered_json without_meta(ordered_json j) {
  j.erase("meta");
  j["config"].erase("threads");
  return j;
}

TEST(Emit, FormatDouble) {
  EXPECT_EQ(format_double(1.0), "1.0");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1e300), "1.0000000000000001e+300");
  EXPECT_EQ(format_double(std::nan("")), "null");
}

TEST(Emit, JsonRoundTrip) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  ordered_json j;
  j["name"] = "x,\"y\"";
  j["ints"] = {1, -2, 3};
  for (int k = 0; k < 200; ++k) j["floats"].push_back(u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20));
  j["nested"] = {{"b", true}, {"n", nullptr}, {"empty", ordered_json::array()}, {"obj", ordered_json::object()}};
  const auto parsed = ordered_json::parse(emit_json(j));
  EXPECT_EQ(parsed, j);
  EXPECT_EQ(emit_json(parsed), emit_json(j));
  EXPECT_EQ(ordered_json::parse(emit_json(j, 0)), j);
}

TEST(Emit, FieldOrderIsStable) {
  ordered_json j;
  j["z"] = 1;
  j["a"] = 2;
  const std::string s = emit_json(j, 0);
  EXPECT_EQ(s, "{\"z\":1,\"a\":2}\n");
}

TEST(Emit, CsvQuoting) {
  ordered_json rows = ordered_json::array();
  rows.push_back({{"a", "plain"}, {"b", "has,comma"}});
  rows.push_back({{"a", "say \"hi\""}, {"b", "two\nlines"}, {"c", 0.5}});
  EXPECT_EQ(emit_csv(rows), "a,b,c\r\nplain,\"has,comma\",\r\n\"say \"\"hi\"\"\",\"two\nlines\",0.5\r\n");
}

TEST(Emit, EmptyTable) {
  EXPECT_EQ(emit_csv(ordered_json::array()), "\r\n");
  const auto res = run(config("normality", {{"checkpoints", "10"}}));
  ASSERT_EQ(res.exit_code, 0) << res.body;
  ordered_json empty = res.report;
  empty["results"]["table"] = ordered_json::array();
  EXPECT_EQ(ordered_json::parse(emit_json(empty)), empty);
}

TEST(Run, FreqReportRows) {
  const auto res = run(config("blocks", {{"N", "1000"}, {"L", "2"}}));
  ASSERT_EQ(res.exit_code, 0) << res.body;
  const auto& table = res.report["results"]["table"];
  ASSERT_EQ(table.size(), 4u);
  std::uint64_t total = 0;
  for (const auto& row : table) total += row["count"].get<std::uint64_t>();
  EXPECT_EQ(total, 1000u);
  RunConfig csv = config("blocks", {{"N", "1000"}, {"L", "2"}});
  csv.format = "csv";
  const auto body = run(csv).body;
  EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 5);
  EXPECT_EQ(body.rfind("word,count,frequency,deviation\r\n", 0), 0u);
}

TEST(Run, SeqMatchesFloorPower) {
  const auto res = run(config("seq", {{"c", "7/5"}, {"count", "16"}}));
  ASSERT_EQ(res.exit_code, 0) << res.body;
  const auto c = ExponentSpec::rational(7, 5);
  const auto& values = res.report["results"]["values"];
  ASSERT_EQ(values.size(), 16u);
  for (unsigned n = 0; n < 16; ++n) EXPECT_EQ(values[n].get<int>(), thue_morse(floor_power(BigInt(n), c)));
}

TEST(Run, ConfigEcho) {
  const auto res = run(config("bv-ap", {{"x", "1000"}}));
  ASSERT_EQ(res.exit_code, 0) << res.body;
  const auto& cfg = res.report["config"];
  EXPECT_EQ(cfg["parameters"]["omega"], "01");
  EXPECT_EQ(cfg["parameters"]["D"], format_double(std::pow(1000.0, 0.55)));
  EXPECT_TRUE(cfg["policy"].contains("j_rule"));
  EXPECT_EQ(res.report["version"], kVersion);
  EXPECT_TRUE(res.report["meta"].contains("wall_time_s"));
}

TEST(Run, S1CapCurveIsMonotone) {
  const auto res = run(config("s1", {{"N", "24"}, {"curve", "4"}}));
  ASSERT_EQ(res.exit_code, 0) << res.body;
  const auto& curve = res.report["results"]["cap_curve"];
  ASSERT_EQ(curve.size(), 4u);
  for (std::size_t k = 1; k < curve.size(); ++k) {
    EXPECT_GT(curve[k]["j_cap"].get<std::uint64_t>(), curve[k - 1]["j_cap"].get<std::uint64_t>());
    EXPECT_GE(curve[k]["normalized"].get<double>(), curve[k - 1]["normalized"].get<double>());
  }
  EXPECT_EQ(curve.back()["normalized"], res.report["results"]["normalized"]);
}

TEST(Run, DeterministicAcrossThreads) {
  const std::vector<std::pair<std::string, std::map<std::string, std::string>>> cases = {
      {"blocks", {{"N", "300000"}, {"L", "4"}}},
      {"normality", {{"checkpoints", "1e4,1e5"}}},
      {"bv-ap", {{"x", "20000"}}},
      {"bv-beatty", {{"x", "20000"}, {"grid", "8"}}},
      {"s1", {{"N", "16"}}},
      {"fourier-check", {{"instances", "5"}}},
      {"lemmas", {{"suite", "vdc"}}},
  };
  for (const auto& [cmd, params] : cases) {
    RunConfig a = config(cmd, params, 1), b = config(cmd, params, 4);
    a.seed = b.seed = 9;
    const auto ra = run(a), rb = run(b);
    ASSERT_EQ(ra.exit_code, 0) << ra.body;
    EXPECT_EQ(emit_json(without_meta(ra.report)), emit_json(without_meta(rb.report))) << cmd;
  }
}

TEST(Run, SeedChangesRandomizedCommands) {
  RunConfig a = config("fourier-check", {{"instances", "3"}}), b = a;
  b.seed = 1;
  EXPECT_NE(run(a).report["results"], run(b).report["results"]);
  EXPECT_EQ(run(a).report["results"], run(a).report["results"]);
}

TEST(Run, LemmasAllHold) {
  const auto res = run(config("lemmas", {{"suite", "all"}, {"budget", "small"}}));
  ASSERT_EQ(res.exit_code, 0) << res.body;
  EXPECT_TRUE(res.report["results"]["all_hold"].get<bool>());
  for (const auto& row : res.report["results"]["table"]) {
    EXPECT_TRUE(row["holds"].get<bool>()) << row.dump();
    EXPECT_GT(row["cases"].get<int>(), 0) << row.dump();
  }
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run(config("nope")).exit_code, 2);
  EXPECT_EQ(run(config("seq", {{"bogus", "1"}})).exit_code, 2);
  EXPECT_EQ(run(config("seq", {{"count", "-3"}})).exit_code, 2);
  EXPECT_EQ(run(config("farey", {{"alpha", "abc"}})).exit_code, 2);
  EXPECT_EQ(run(config("seq", {{"count", "2e6"}})).exit_code, 3);
  EXPECT_EQ(run(config("blocks", {{"N", "2e8"}})).exit_code, 3);
  EXPECT_EQ(run(config("s1", {{"N", "4000"}})).exit_code, 3);
  EXPECT_EQ(exit_code_for(std::make_exception_ptr(PrecisionExhausted("x"))), 4);
  RunConfig bad = config("seq");
  bad.format = "xml";
  EXPECT_EQ(run(bad).exit_code, 2);
}

}  // namespace
}  // namespace tmps
