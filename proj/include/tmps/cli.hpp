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

#pragma once

#include <chrono>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tmps/beatty.hpp"
#include "tmps/census.hpp"
#include "tmps/errors.hpp"
#include "tmps/farey.hpp"
#include "tmps/fourier.hpp"
#include "tmps/powerfloor.hpp"
#include "tmps/report.hpp"
#include "tmps/sumlab.hpp"

#ifndef TMPS_VERSION
#define TMPS_VERSION "0.0.0"
#endif

namespace tmps {

inline constexpr const char* kVersion = TMPS_VERSION;

struct ParamSpec {
  std::string key;
  std::string fallback;
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
};

inline const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = {
      {"seq", "t(floor(n^c)) for n in [start, start + count)",
       {{"c", "7/5", "exponent, p/q or decimal"}, {"start", "0", "first n"}, {"count", "16", "number of terms (<= 1e6)"}}},
      {"blocks", "block frequencies of t(floor(n^c)) over n < N",
       {{"c", "7/5", "exponent"}, {"N", "1e5", "prefix length"}, {"L", "3", "block length"}}},
      {"normality", "max block-frequency deviation at several prefix lengths",
       {{"c", "7/5", "exponent"}, {"L", "3", "block length"}, {"checkpoints", "1e4,1e5,1e6", "increasing prefix lengths"}}},
      {"fourier-check", "recursive against direct Fourier tables on seeded random instances",
       {{"instances", "20", "number of instances"}, {"lambda", "10", "largest level"}, {"L", "3", "largest block length"},
        {"r", "64", "largest shift"}}},
      {"census-good", "exact census of good-position sets over all d < 2^lambda",
       {{"lambda", "14", "level (<= 24)"}, {"x", "6", "2-adic valuation of r"}, {"m", "3", "block exponent"},
        {"r0", "1", "odd part of r"}, {"L", "1", "profile length"}}},
      {"discrepancy", "D_N(alpha) on the exact or the float path",
       {{"alpha", "0.6180339887498949", "slope, p/q or decimal"}, {"N", "1000", "number of points (<= 1e7)"},
        {"path", "exact", "exact or float"}}},
      {"farey", "Farey neighbours of order n and a scaled Farey approximation",
       {{"n", "8", "order"}, {"alpha", "0.6180339887498949", "value to approximate"}, {"mu", "4", "scale exponent"},
        {"sigma", "6", "accuracy exponent"}}},
      {"bv-ap", "sum over d in (D, 2D] of max_j |A(x; d, j) - x/(2^L d)|",
       {{"x", "1e4", "length (<= 1e6)"}, {"D", "auto", "modulus scale, auto = x^0.55"}, {"omega", "01", "block"},
        {"y_starts", "0", "window starts"}, {"length_fractions", "1", "window lengths as fractions of x"}}},
      {"bv-beatty", "midpoint average over alpha in (D, 2D] of the Beatty block deviation",
       {{"x", "1e4", "length (<= 1e6)"}, {"D", "auto", "slope scale, auto = x^0.55"}, {"omega", "01", "block"},
        {"grid", "32", "alpha nodes"}, {"beta_denominator", "1", "beta step 1/F"}, {"y_starts", "0", "window starts"},
        {"length_fractions", "1", "window lengths as fractions of x"}}},
      {"s1", "sampled S1 sum over d in [D, 2D) or alpha in (D, 2D]",
       {{"N", "64", "inner length"}, {"D", "auto", "scale, auto = N^1.5"}, {"a", "1,1", "coefficients, a_0 = 1"},
        {"xi", "0", "frequency"}, {"j_cap", "0", "offset cap, 0 = default"}, {"mode", "direct", "direct or beatty"},
        {"grid", "32", "alpha nodes in beatty mode"}, {"curve", "5", "direct mode: also report caps j_cap / 4^k, k < curve"}}},
      {"lemmas", "run the checker suites",
       {{"suite", "all", "all or one suite name"}, {"budget", "small", "small or medium"}}},
  };
  return specs;
}

inline const CommandSpec& command_spec(const std::string& name) {
  for (const auto& s : command_specs())
    if (s.name == name) return s;
  throw PreconditionError("unknown command '" + name + "'");
}

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string output;
  std::string format = "json";
};

struct RunResult {
  int exit_code = 0;
  ordered_json report;  // empty on failure
  std::string body;     // emitted bytes, or the error message
};

namespace detail {

// Typed access to command parameters; every value read is echoed.
class Params {
 public:
  Params(const CommandSpec& spec, const std::map<std::string, std::string>& given) {
    for (const auto& [k, v] : given) {
      bool known = false;
      for (const auto& p : spec.params) known = known || p.key == k;
      require(known, spec.name + ": unknown parameter '" + k + "'");
    }
    for (const auto& p : spec.params) {
      auto it = given.find(p.key);
      values_[p.key] = it == given.end() ? p.fallback : it->second;
      echo[p.key] = values_[p.key];
    }
  }

  const std::string& str(const std::string& key) const { return values_.at(key); }

  std::uint64_t count(const std::string& key) const { return parse_count(str(key), key); }

  std::vector<std::uint64_t> counts(const std::string& key) const {
    std::vector<std::uint64_t> out;
    for (const auto& part : split(str(key))) out.push_back(parse_count(part, key));
    require(!out.empty(), key + ": empty list");
    return out;
  }

  std::vector<Rational> rationals(const std::string& key) const {
    std::vector<Rational> out;
    for (const auto& part : split(str(key))) out.push_back(Rational::parse(part));
    require(!out.empty(), key + ": empty list");
    return out;
  }

  double real(const std::string& key) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(str(key), &used);
      if (used == str(key).size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw PreconditionError(key + ": expected a number, got '" + str(key) + "'");
  }

  // "auto" resolves to base^power; the echo records the resolved value.
  double real_or_auto(const std::string& key, double base, double power) {
    if (str(key) != "auto") return real(key);
    const double v = std::pow(base, power);
    echo[key] = format_double(v);
    return v;
  }

  void resolve(const std::string& key, const std::string& value) { echo[key] = value; }

  ordered_json echo;

 private:
  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else if (ch != ' ') {
        cur.push_back(ch);
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  }

  static std::uint64_t parse_count(const std::string& s, const std::string& key) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size() && v >= 0 && v <= 0x1p53 && v == std::floor(v)) return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
    }
    throw PreconditionError(key + ": expected a nonnegative integer, got '" + s + "'");
  }

  std::map<std::string, std::string> values_;
};

inline std::vector<int> parse_coefficients(const std::string& s) {
  std::vector<int> out;
  for (char ch : s) {
    if (ch == ',' || ch == ' ') continue;
    require(ch == '0' || ch == '1', "a: expected 0/1 coefficients");
    out.push_back(ch - '0');
  }
  return out;
}

inline ShiftProfile sample_profile(std::mt19937_64& rng, unsigned L, std::uint64_t r) {
  ShiftProfile p;
  p.r = r;
  p.head.assign(L, 0);
  p.tail.assign(L, 0);
  for (unsigned l = 1; l < L; ++l) p.head[l] = p.head[l - 1] + rng() % 2;
  p.tail[0] = p.head[L - 1] + rng() % (r - L + 2);
  for (unsigned l = 1; l < L; ++l) p.tail[l] = p.tail[l - 1] + rng() % 2;
  return p;
}

inline std::vector<int> sample_word(std::mt19937_64& rng, unsigned L) {
  std::vector<int> a(L, 1);
  for (unsigned l = 1; l < L; ++l) a[l] = static_cast<int>(rng() % 2);
  return a;
}

inline ordered_json freq_table(const FreqReport& rep) {
  ordered_json rows = ordered_json::array();
  for (std::uint32_t code = 0; code < rep.counts.size(); ++code) {
    ordered_json row;
    row["word"] = Word(rep.L, code).str();
    row["count"] = rep.counts[code];
    row["frequency"] = rep.total ? static_cast<double>(rep.counts[code]) / static_cast<double>(rep.total) : 0.0;
    row["deviation"] = rep.deviations[code];
    rows.push_back(row);
  }
  return rows;
}

inline ordered_json average_results(const AverageReport& rep) {
  ordered_json out;
  out["x"] = rep.x;
  out["D"] = rep.D;
  out["samples"] = rep.samples.size();
  out["weight"] = rep.weight;
  out["aggregate"] = rep.aggregate;
  out["normalized"] = rep.normalized;
  ordered_json rows = ordered_json::array();
  for (const auto& s : rep.samples) rows.push_back({{"at", s.at.str()}, {"at_value", s.at.to_double()}, {"deviation", s.deviation}});
  out["table"] = rows;
  return out;
}

inline SamplingPolicy policy_from(const Params& p) {
  SamplingPolicy policy;
  policy.y_starts = p.rationals("y_starts");
  policy.length_fractions = p.rationals("length_fractions");
  return policy;
}

// ---------------------------------------------------------------------------
// Checker suites.
// ---------------------------------------------------------------------------

struct Check {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  double max_error = 0;

  ordered_json row() const {
    return {{"check", name}, {"cases", cases}, {"violations", violations}, {"max_error", max_error}, {"holds", violations == 0}};
  }
  void record(bool ok, double err = 0) {
    ++cases;
    violations += !ok;
    max_error = std::max(max_error, err);
  }
};

inline std::vector<Check> suite_fourier(std::mt19937_64& rng, bool medium) {
  Check rec{"fourier.recursive_matches_direct"}, pars{"fourier.parseval"}, single{"fourier.single_estimate"};
  for (int k = 0; k < (medium ? 200 : 50); ++k) {
    const unsigned lambda = static_cast<unsigned>(rng() % 11), L = 1 + static_cast<unsigned>(rng() % 3);
    const std::uint64_t r = L + rng() % (65 - L);
    const auto i = sample_profile(rng, L, r);
    const auto b = CoeffBlock::two_block(sample_word(rng, L), r);
    const std::uint64_t d = rng() % 4096;
    const auto direct = fourier_direct(lambda, i, b, d), rec_t = fourier_recursive(lambda, i, b, d);
    double diff = 0;
    for (std::size_t h = 0; h < direct.entries.size(); ++h) diff = std::max(diff, std::abs(direct.entries[h] - rec_t.entries[h]));
    rec.record(diff <= 1e-9, diff);
    const double perr = std::abs(rec_t.parseval_sum() - 1);
    pars.record(perr <= 1e-9, perr);
  }
  for (int k = 0; k < (medium ? 40 : 10); ++k) {
    ShiftProfile i = ShiftProfile::zero(1, 1024);
    i.tail[0] = rng() % 1024;
    const auto rep = single_estimate_check(medium ? 16 : 12, i, CoeffBlock::two_block({1}, 1024), rng() % 65536, 5);
    single.record(rep.holds, std::max(0.0, rep.max_sq - rep.bound));
  }
  return {rec, pars, single};
}

inline std::vector<Check> suite_census(std::mt19937_64& rng, bool medium) {
  Check formula{"census.good_set_formula"}, total{"census.good_set_total"};
  struct Cell {
    unsigned lambda, x, m;
  };
  std::vector<Cell> cells = {{14, 6, 3}};
  if (medium) cells.push_back({20, 10, 5});
  for (const auto& cell : cells)
    for (std::uint64_t r0 : {1ull, 3ull}) {
      const auto i = sample_profile(rng, 1, (std::uint64_t{1} << cell.x) * r0);
      const auto hist = good_set_histogram(cell.lambda, cell.m, i);
      std::uint64_t sum = 0;
      for (std::size_t mask = 0; mask < hist.size(); ++mask) {
        formula.record(BigInt(hist[mask]) == good_set_count_formula(cell.lambda, cell.x, cell.m, static_cast<unsigned>(std::popcount(mask))));
        sum += hist[mask];
      }
      total.record(sum == (std::uint64_t{1} << cell.lambda));
    }
  Check decay{"census.decay_budget_lower_bound"};
  for (unsigned lambda = 40; lambda <= 60; ++lambda) {
    const auto rep = decay_budget(lambda, 1024, 5);
    if (rep.hypotheses) decay.record(rep.lower_bound_holds);
  }
  return {formula, total, decay};
}

inline std::vector<Check> suite_saving(std::mt19937_64& rng, bool medium) {
  Check c{"fourier.saving"};
  const auto b = CoeffBlock::two_block({1}, 1024);
  std::vector<unsigned> zs = medium ? std::vector<unsigned>{0, 3, 5} : std::vector<unsigned>{0, 3};
  for (int k = 0; k < (medium ? 20 : 4); ++k) {
    ShiftProfile i = ShiftProfile::zero(1, 1024);
    i.tail[0] = 32 * (rng() % 31) + 1 + rng() % 2;
    for (unsigned z : zs)
      for (std::uint64_t d = 0; d < (std::uint64_t{1} << z); ++d)
        for (const auto& rep : saving_gap_sweep(z, 5, i, b, d)) c.record(rep.holds, std::max(0.0, rep.lhs - rep.rhs));
  }
  return {c};
}

inline std::vector<Check> suite_carry(std::mt19937_64& rng, bool medium) {
  Check c{"sumlab.carry_bound"};
  const int pairs = medium ? 25 : 5;
  std::vector<std::pair<Rational, Rational>> ab;
  for (int k = 0; k < pairs; ++k)
    ab.emplace_back(Rational(1 + static_cast<std::int64_t>(rng() % 100), 1 + static_cast<std::int64_t>(rng() % 16)),
                    Rational(static_cast<std::int64_t>(rng() % 50), 1 + static_cast<std::int64_t>(rng() % 8)));
  for (std::int64_t r = 0; r <= 8; ++r)
    for (std::int64_t L = 0; r + L <= 8; ++L)
      for (unsigned lambda = 0; lambda <= 10; lambda += medium ? 1 : 5)
        for (const auto& [alpha, beta] : ab) {
          const auto rep = carry_exceptions(r, L, medium ? 512 : 128, lambda, alpha, beta);
          c.record(rep.holds);
        }
  return {c};
}

inline std::vector<Check> suite_vdc(std::mt19937_64& rng, bool medium) {
  Check c{"sumlab.van_der_corput"}, nonneg{"sumlab.van_der_corput_rhs_nonneg"};
  std::normal_distribution<double> g;
  for (int k = 0; k < (medium ? 500 : 100); ++k) {
    std::vector<std::complex<double>> seq(1 + rng() % 64);
    for (auto& v : seq) v = {g(rng), g(rng)};
    const auto rep = vdc_verify(seq, 1 + static_cast<std::int64_t>(rng() % 8), 1 + static_cast<std::int64_t>(rng() % 8));
    c.record(rep.holds, std::max(0.0, rep.lhs - rep.rhs.real()));
    nonneg.record(rep.rhs_nonneg);
  }
  return {c, nonneg};
}

inline std::vector<Check> suite_correlation(std::mt19937_64& rng, bool medium) {
  Check c{"sumlab.correlation_identity"};
  std::normal_distribution<double> g;
  for (int k = 0; k < (medium ? 200 : 50); ++k) {
    std::vector<std::complex<double>> f(1 + rng() % 64);
    for (auto& v : f) v = {g(rng), g(rng)};
    const double res = correlation_residual(f, static_cast<std::int64_t>(rng() % 129) - 64);
    c.record(res < 1e-10, res);
  }
  return {c};
}

inline std::vector<Check> suite_farey(std::mt19937_64& rng, bool medium) {
  Check nb{"farey.neighbours"}, dir{"farey.dirichlet"};
  for (std::int64_t n = 1; n <= (medium ? 64 : 24); ++n)
    for (const auto& [l, r] : farey_neighbors(n)) nb.record(l.den * r.num - l.num * r.den == 1 && l.den + r.den > n);
  for (int k = 0; k < (medium ? 10000 : 1000); ++k) {
    const unsigned mu = static_cast<unsigned>(rng() % 9), sigma = 1 + static_cast<unsigned>(rng() % 8);
    const BigRational alpha(BigInt(rng() % (1ull << 50)), BigInt(1 + rng() % (1ull << 40)));
    const auto fa = farey_approx_scaled(alpha, mu, sigma);
    dir.record(fa.q >= 1 && fa.q <= (BigInt(1) << (mu + sigma)) &&
               dirichlet_error(fa, alpha) < BigRational(BigInt(1), BigInt(1) << sigma));
  }
  return {nb, dir};
}

inline std::vector<Check> suite_powerfloor(std::mt19937_64& rng, bool medium) {
  Check c{"powerfloor.cross_path"};
  const auto q = ExponentSpec::rational(7, 5), r = ExponentSpec::real("1.4");
  for (int k = 0; k < (medium ? 20000 : 2000); ++k) {
    const BigInt n(rng() % 1000000000000ull);
    c.record(floor_power(n, q) == floor_power(n, r));
  }
  c.record(floor_power(BigInt(4), ExponentSpec::real("1.5")) == 8);
  return {c};
}

inline std::vector<Check> suite_discrepancy(std::mt19937_64& rng, bool medium) {
  Check c{"beatty.discrepancy_paths"};
  for (int k = 0; k < (medium ? 200 : 50); ++k) {
    // Dyadic slopes are exact in double, so both paths see the same points.
    const std::int64_t num = static_cast<std::int64_t>(rng() % (1ull << 30));
    const std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 1024);
    const double exact = discrepancy_exact(Rational(num, std::int64_t{1} << 30), N).to_double();
    const double flt = discrepancy(std::ldexp(static_cast<double>(num), -30), N);
    c.record(std::abs(exact - flt) <= 1e-12, std::abs(exact - flt));
  }
  return {c};
}

inline const std::vector<std::pair<std::string, std::vector<Check> (*)(std::mt19937_64&, bool)>>& suites() {
  static const std::vector<std::pair<std::string, std::vector<Check> (*)(std::mt19937_64&, bool)>> all = {
      {"fourier", suite_fourier},     {"census", suite_census}, {"saving", suite_saving},
      {"carry", suite_carry},         {"vdc", suite_vdc},       {"correlation", suite_correlation},
      {"farey", suite_farey},         {"powerfloor", suite_powerfloor},
      {"discrepancy", suite_discrepancy},
  };
  return all;
}

// ---------------------------------------------------------------------------
// Commands.
// ---------------------------------------------------------------------------

inline ordered_json cmd_seq(Params& p, unsigned) {
  const auto c = ExponentSpec::parse(p.str("c"));
  const std::uint64_t start = p.count("start"), count = p.count("count");
  if (count > 1000000) throw BudgetExceeded("seq: count must be <= 1e6");
  const auto t = ps_sequence(start, start + count, c);
  ordered_json out, rows = ordered_json::array();
  out["values"] = t;
  for (std::uint64_t k = 0; k < count; ++k)
    rows.push_back({{"n", start + k}, {"floor", floor_power(BigInt(start + k), c).str()}, {"t", t[k]}});
  out["table"] = rows;
  return out;
}

inline ordered_json cmd_blocks(Params& p, unsigned threads) {
  const auto rep = block_count_ps(p.count("N"), ExponentSpec::parse(p.str("c")), static_cast<unsigned>(p.count("L")), threads);
  ordered_json out;
  out["total"] = rep.total;
  out["max_dev"] = rep.max_dev;
  out["table"] = freq_table(rep);
  return out;
}

inline ordered_json cmd_normality(Params& p, unsigned threads) {
  const auto rep = normality_report(ExponentSpec::parse(p.str("c")), static_cast<unsigned>(p.count("L")), p.counts("checkpoints"), threads);
  ordered_json out, rows = ordered_json::array();
  for (const auto& row : rep.rows) rows.push_back({{"N", row.N}, {"max_dev", row.report.max_dev}});
  out["slope_defined"] = rep.slope_defined;
  if (rep.slope_defined) out["slope"] = rep.slope;
  else out["slope"] = nullptr;
  out["table"] = rows;
  return out;
}

inline ordered_json cmd_fourier_check(Params& p, std::uint64_t seed) {
  const std::uint64_t instances = p.count("instances"), maxL = p.count("L"), maxr = p.count("r");
  const unsigned max_lambda = static_cast<unsigned>(p.count("lambda"));
  if (instances > 10000) throw BudgetExceeded("fourier-check: instances must be <= 1e4");
  require(max_lambda <= 16, "fourier-check: lambda must be <= 16");
  require(maxL >= 1 && maxL <= 8 && maxr >= maxL && maxr <= 4096, "fourier-check: need 1 <= L <= 8 and L <= r <= 4096");
  std::mt19937_64 rng(seed);
  ordered_json out, rows = ordered_json::array();
  double worst = 0, worst_parseval = 0;
  for (std::uint64_t k = 0; k < instances; ++k) {
    const unsigned lambda = static_cast<unsigned>(rng() % (max_lambda + 1)), L = 1 + static_cast<unsigned>(rng() % maxL);
    const std::uint64_t r = L + rng() % (maxr - L + 1);
    const auto i = sample_profile(rng, L, r);
    const auto b = CoeffBlock::two_block(sample_word(rng, L), r);
    const std::uint64_t d = rng() % 4096;
    const auto direct = fourier_direct(lambda, i, b, d), rec = fourier_recursive(lambda, i, b, d);
    double diff = 0;
    for (std::size_t h = 0; h < direct.entries.size(); ++h) diff = std::max(diff, std::abs(direct.entries[h] - rec.entries[h]));
    const double perr = std::abs(rec.parseval_sum() - 1);
    worst = std::max(worst, diff);
    worst_parseval = std::max(worst_parseval, perr);
    rows.push_back({{"instance", k}, {"lambda", lambda}, {"L", L}, {"r", r}, {"d", d}, {"max_abs_diff", diff}, {"parseval_error", perr}});
  }
  out["max_abs_diff"] = worst;
  out["max_parseval_error"] = worst_parseval;
  out["holds"] = worst <= 1e-9 && worst_parseval <= 1e-9;
  out["table"] = rows;
  return out;
}

inline ordered_json cmd_census_good(Params& p, std::uint64_t seed) {
  const unsigned lambda = static_cast<unsigned>(p.count("lambda")), x = static_cast<unsigned>(p.count("x")),
                 m = static_cast<unsigned>(p.count("m")), L = static_cast<unsigned>(p.count("L"));
  const std::uint64_t r0 = p.count("r0");
  require(r0 % 2 == 1, "census-good: r0 must be odd");
  require(x <= 30 && r0 < (std::uint64_t{1} << 20), "census-good: r out of range");
  require(L >= 1 && L <= 8, "census-good: L must be in [1, 8]");
  std::mt19937_64 rng(seed);
  const std::uint64_t r = (std::uint64_t{1} << x) * r0;
  require(r >= L, "census-good: r must be >= L");
  const auto i = sample_profile(rng, L, r);
  const auto pc = position_classes(lambda, x, m);
  const auto hist = good_set_histogram(lambda, m, i);
  ordered_json out, rows = ordered_json::array();
  out["profile"] = {{"r", i.r}, {"head", i.head}, {"tail", i.tail}};
  out["lambda0"] = pc.lambda0;
  out["type1"] = pc.type1;
  out["type2"] = pc.type2;
  std::uint64_t total = 0;
  bool all = true;
  for (std::size_t mask = 0; mask < hist.size(); ++mask) {
    std::vector<unsigned> M;
    for (std::size_t j = 0; j < pc.type2.size(); ++j)
      if (mask >> j & 1) M.push_back(pc.type2[j]);
    const BigInt formula = good_set_count_formula(lambda, x, m, static_cast<unsigned>(M.size()));
    all = all && formula == BigInt(hist[mask]);
    total += hist[mask];
    rows.push_back({{"M", M}, {"k", M.size()}, {"count", hist[mask]}, {"formula", formula.str()}, {"match", formula == BigInt(hist[mask])}});
  }
  out["total"] = total;
  out["holds"] = all && total == (std::uint64_t{1} << lambda);
  out["table"] = rows;
  return out;
}

inline ordered_json cmd_discrepancy(Params& p, unsigned) {
  const std::uint64_t N = p.count("N");
  if (N > 10000000) throw BudgetExceeded("discrepancy: N must be <= 1e7");
  ordered_json out;
  if (p.str("path") == "exact") {
    const Rational alpha = Rational::parse(p.str("alpha"));
    const Rational d = discrepancy_exact(alpha, static_cast<std::int64_t>(N));
    out["alpha"] = alpha.str();
    out["exact"] = d.str();
    out["value"] = d.to_double();
  } else if (p.str("path") == "float") {
    out["value"] = discrepancy(p.real("alpha"), static_cast<std::int64_t>(N));
  } else {
    throw PreconditionError("discrepancy: path must be exact or float");
  }
  return out;
}

inline ordered_json cmd_farey(Params& p, unsigned) {
  const auto n = static_cast<std::int64_t>(p.count("n"));
  const auto mu = static_cast<unsigned>(p.count("mu")), sigma = static_cast<unsigned>(p.count("sigma"));
  require(sigma >= 1 && mu + sigma <= 60, "farey: need sigma >= 1 and mu + sigma <= 60");
  const Rational a = Rational::parse(p.str("alpha"));
  const BigRational alpha(BigInt(a.num()), BigInt(a.den()));
  const auto fa = farey_approx_scaled(alpha, mu, sigma);
  ordered_json out, rows = ordered_json::array();
  out["approximation"] = {{"p", fa.p.str()},
                          {"q", fa.q.str()},
                          {"left", fa.left_num.str() + "/" + fa.left_den.str()},
                          {"right", fa.right_num.str() + "/" + fa.right_den.str()},
                          {"error", static_cast<double>(dirichlet_error(fa, alpha))}};
  for (const auto& f : farey_sequence(n)) rows.push_back({{"num", f.num}, {"den", f.den}});
  out["table"] = rows;
  return out;
}

inline ordered_json cmd_bv_ap(Params& p, unsigned threads, ordered_json& policy_echo) {
  const auto x = static_cast<std::int64_t>(p.count("x"));
  const double D = p.real_or_auto("D", static_cast<double>(x), 0.55);
  const auto rep = ap_average_deviation(x, D, Word::parse(p.str("omega")), policy_from(p), threads);
  policy_echo = rep.policy;
  return average_results(rep);
}

inline ordered_json cmd_bv_beatty(Params& p, unsigned threads, ordered_json& policy_echo) {
  const auto x = static_cast<std::int64_t>(p.count("x"));
  const double D = p.real_or_auto("D", static_cast<double>(x), 0.55);
  SamplingPolicy policy = policy_from(p);
  policy.beta_denominator = static_cast<std::int64_t>(p.count("beta_denominator"));
  const auto rep = beatty_average_deviation(x, D, Word::parse(p.str("omega")), static_cast<std::int64_t>(p.count("grid")), policy, threads);
  policy_echo = rep.policy;
  return average_results(rep);
}

inline ordered_json cmd_s1(Params& p, unsigned threads, ordered_json& policy_echo) {
  SumParams sp;
  sp.N = static_cast<std::int64_t>(p.count("N"));
  sp.D = p.real_or_auto("D", static_cast<double>(sp.N), 1.5);
  sp.a = parse_coefficients(p.str("a"));
  sp.xi = p.real("xi");
  sp.j_cap = p.count("j_cap");
  sp.validate();
  policy_echo = {{"j_rule", "0, k 2^t (odd k < 16), rho 2^t (4 fixed odd 20-bit rho), all < j_cap"},
                 {"j_cap", sp.effective_cap()},
                 {"j_samples", sampled_offsets(sp.effective_cap()).size()}};
  ordered_json out, rows = ordered_json::array();
  if (p.str("mode") == "direct") {
    const auto rep = s1_direct(sp, threads);
    out["value"] = rep.value;
    out["normalized"] = rep.normalized;
    out["d_count"] = rep.d_count;
    const auto d_lo = static_cast<std::int64_t>(std::ceil(sp.D));
    for (std::size_t k = 0; k < rep.per_d.size(); ++k) rows.push_back({{"d", d_lo + static_cast<std::int64_t>(k)}, {"value", rep.per_d[k]}});
    // Stabilization of the sampled maximum as the offset cap grows.
    const std::uint64_t points = p.count("curve");
    require(points <= 16, "s1: curve must be <= 16");
    ordered_json curve = ordered_json::array();
    for (std::uint64_t k = points; k-- > 0;) {
      SumParams q = sp;
      q.j_cap = std::max<std::uint64_t>(1, sp.effective_cap() >> (2 * k));
      const auto r = k == 0 ? rep : s1_direct(q, threads);
      curve.push_back({{"j_cap", q.j_cap}, {"j_samples", r.j_samples}, {"normalized", r.normalized}});
    }
    out["cap_curve"] = curve;
  } else if (p.str("mode") == "beatty") {
    const auto rep = s1_beatty_direct(sp, static_cast<std::int64_t>(p.count("grid")), threads);
    out["value"] = rep.value;
    out["normalized"] = rep.normalized;
    out["grid"] = rep.grid;
    for (const auto& [alpha, v] : rep.nodes) rows.push_back({{"alpha", alpha.str()}, {"value", v}});
  } else {
    throw PreconditionError("s1: mode must be direct or beatty");
  }
  out["lower_bound_only"] = true;
  out["table"] = rows;
  return out;
}

inline ordered_json cmd_lemmas(Params& p, std::uint64_t seed) {
  const std::string suite = p.str("suite"), budget = p.str("budget");
  require(budget == "small" || budget == "medium", "lemmas: budget must be small or medium");
  bool known = suite == "all";
  for (const auto& [name, fn] : suites()) known = known || name == suite;
  require(known, "lemmas: unknown suite '" + suite + "'");
  ordered_json out, rows = ordered_json::array();
  bool all = true;
  std::uint64_t index = 0;
  for (const auto& [name, fn] : suites()) {
    ++index;
    if (suite != "all" && suite != name) continue;
    std::mt19937_64 rng(seed * 1000003 + index);
    for (const auto& c : fn(rng, budget == "medium")) {
      all = all && c.violations == 0;
      rows.push_back(c.row());
    }
  }
  out["all_hold"] = all;
  out["table"] = rows;
  return out;
}

}  // namespace detail

/// Executes a command and returns the full report; errors propagate.
inline ordered_json execute(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const CommandSpec& spec = command_spec(cfg.command);
  require(cfg.format == "json" || cfg.format == "csv", "format must be json or csv");
  detail::Params p(spec, cfg.params);
  const unsigned threads = cfg.threads == 0 ? default_threads() : cfg.threads;
  ordered_json policy;
  ordered_json results;
  const std::string& c = cfg.command;
  if (c == "seq") results = detail::cmd_seq(p, threads);
  else if (c == "blocks") results = detail::cmd_blocks(p, threads);
  else if (c == "normality") results = detail::cmd_normality(p, threads);
  else if (c == "fourier-check") results = detail::cmd_fourier_check(p, cfg.seed);
  else if (c == "census-good") results = detail::cmd_census_good(p, cfg.seed);
  else if (c == "discrepancy") results = detail::cmd_discrepancy(p, threads);
  else if (c == "farey") results = detail::cmd_farey(p, threads);
  else if (c == "bv-ap") results = detail::cmd_bv_ap(p, threads, policy);
  else if (c == "bv-beatty") results = detail::cmd_bv_beatty(p, threads, policy);
  else if (c == "s1") results = detail::cmd_s1(p, threads, policy);
  else results = detail::cmd_lemmas(p, cfg.seed);

  ordered_json report;
  report["command"] = cfg.command;
  report["version"] = kVersion;
  ordered_json config;
  config["seed"] = cfg.seed;
  config["threads"] = threads;
  config["format"] = cfg.format;
  config["parameters"] = p.echo;
  if (!policy.is_null()) config["policy"] = policy;
  report["config"] = config;
  report["results"] = results;
  report["meta"] = {{"wall_time_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  return report;
}

inline std::string emit(const ordered_json& report, const std::string& format) {
  if (format == "csv") return emit_csv(report["results"].contains("table") ? report["results"]["table"] : ordered_json::array());
  return emit_json(report);
}

inline int exit_code_for(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const PreconditionError&) {
    return 2;
  } catch (const BudgetExceeded&) {
    return 3;
  } catch (const PrecisionExhausted&) {
    return 4;
  } catch (...) {
    return 1;
  }
}

/// execute + emit, with errors mapped to exit codes 2/3/4.
inline RunResult run(const RunConfig& cfg) {
  RunResult out;
  try {
    out.report = execute(cfg);
    out.body = emit(out.report, cfg.format);
  } catch (const std::exception& e) {
    out.exit_code = exit_code_for(std::current_exception());
    out.report = ordered_json();
    out.body = e.what();
  }
  return out;
}

}  // namespace tmps
