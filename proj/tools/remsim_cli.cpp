/*
 * Copyright 2026 The remsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// remsim: run / area / perf / sweep front end.
//
// Exit codes: 0 ok, 1 configuration or usage error, 2 runtime error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "remsim/config.hpp"
#include "remsim/error.hpp"
#include "remsim/report.hpp"

namespace fs = std::filesystem;
using namespace remsim;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

struct Common {
  std::string config;
  std::string out_dir = ".";
  std::optional<unsigned> threads;
  std::optional<std::string> mode;
  std::optional<std::string> pe_order;
};

ExperimentConfig load(const Common& c) {
  ExperimentConfig cfg = load_config(c.config);
  if (c.threads) cfg.options.threads = *c.threads;
  if (c.mode) cfg.options.mode = parse_schedule_mode(*c.mode);
  if (c.pe_order) cfg.options.pe_order = parse_pe_order(*c.pe_order);
  return cfg;
}

void add_common(CLI::App* cmd, Common& c, bool run_options) {
  cmd->add_option("config", c.config, "experiment config file")->required();
  cmd->add_option("-o,--out", c.out_dir, "output directory");
  if (run_options) {
    cmd->add_option("--threads", c.threads, "PE evaluation threads")->check(CLI::Range(1u, 1024u));
    cmd->add_option("--mode", c.mode, "pipelined or serial");
    cmd->add_option("--pe-order", c.pe_order, "forward, reverse or shuffled");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"remsim: ROM-embedded RAM spiking accelerator simulator"};
  app.require_subcommand(1);

  Common common;
  bool json = false;
  std::string fp_list = "0.4,1.0";
  std::string tech_list = "sram,rsram,stt,rmram";

  auto* run = app.add_subcommand("run", "simulate one experiment; writes report.txt and stats.csv");
  add_common(run, common, true);
  run->add_flag("--json", json, "also write stats.json");

  auto* area = app.add_subcommand("area", "iso-storage per-PE area for every technology");
  add_common(area, common, false);

  auto* perf = app.add_subcommand("perf", "iso-area PE count and throughput projection");
  add_common(perf, common, false);

  auto* sw = app.add_subcommand("sweep", "run every (technology, fp) combination; writes sweep.csv");
  add_common(sw, common, true);
  sw->add_option("--fp", fp_list, "comma-separated max firing rates");
  sw->add_option("--tech", tech_list, "comma-separated technologies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const ExperimentConfig cfg = load(common);
    const fs::path out = common.out_dir;
    fs::create_directories(out);

    if (run->parsed()) {
      const RunStats stats = run_experiment(cfg);
      const std::string text = report_text(stats, cfg);
      write_file(out / "report.txt", text);
      write_file(out / "stats.csv", stats_csv(stats));
      if (json) write_file(out / "stats.json", stats_json(stats));
      std::cout << text;
    } else if (area->parsed()) {
      const std::string text = area_text(area_report(cfg));
      write_file(out / "area.txt", text);
      std::cout << text;
    } else if (perf->parsed()) {
      const std::string text = perf_text(perf_report(cfg));
      write_file(out / "perf.txt", text);
      std::cout << text;
    } else if (sw->parsed()) {
      std::vector<double> fps;
      for (const std::string& s : split_list(fp_list)) {
        double v = 0.0;
        try {
          v = std::stod(s);
        } catch (const std::exception&) {
          throw ConfigError(fmt::format("--fp: '{}' is not a number", s));
        }
        if (!(v > 0.0 && v <= 1.0)) throw ConfigError(fmt::format("--fp: {} out of range (0, 1]", s));
        fps.push_back(v);
      }
      std::vector<TechKind> techs;
      for (const std::string& s : split_list(tech_list)) techs.push_back(parse_tech(s));
      if (fps.empty() || techs.empty()) throw ConfigError("sweep needs at least one fp and one technology");
      const auto points = sweep(cfg, fps, techs);
      const std::string csv = sweep_csv(points);
      write_file(out / "sweep.csv", csv);
      std::cout << csv;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
