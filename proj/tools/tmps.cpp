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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tmps/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Thue-Morse digit experiments along floor(n^c)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tmps::kVersion);
  tmps::RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for randomized commands")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads, 0 = TMPS_THREADS or hardware")->capture_default_str();
  app.add_option("--output", cfg.output, "report file, default stdout");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  std::map<std::string, std::map<std::string, std::string>> values;
  for (const auto& spec : tmps::command_specs()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->fallthrough();
    auto& store = values[spec.name];
    for (const auto& p : spec.params) {
      store[p.key] = p.fallback;
      sub->add_option("--" + p.key, store[p.key], p.help)->capture_default_str();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.params = values[cfg.command];
  const tmps::RunResult res = tmps::run(cfg);
  if (res.exit_code != 0) {
    std::cerr << "tmps " << cfg.command << ": " << res.body << "\n";
    return res.exit_code;
  }
  if (cfg.output.empty()) {
    std::cout << res.body;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    out << res.body;
    if (!out) {
      std::cerr << "tmps: cannot write " << cfg.output << "\n";
      return 1;
    }
  }
  return 0;
}
