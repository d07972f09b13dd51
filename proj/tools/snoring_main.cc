// Copyright 2026 The Snoring Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command line driver. Exit codes: 0 success, 1 input error, 2 degenerate
// data.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "snoring/dataset.h"
#include "snoring/error.h"
#include "snoring/experiment.h"
#include "snoring/git_miner.h"
#include "snoring/history_io.h"
#include "snoring/jira_client.h"
#include "snoring/labeling.h"
#include "snoring/synth.h"
#include "snoring/szz.h"
#include "snoring/tickets.h"
#include "snoring/time.h"

namespace fs = std::filesystem;
using namespace snoring;

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool offline = false;
};

ExperimentConfig resolve(const Globals& g, bool synthetic) {
  ExperimentConfig c;
  if (!g.config.empty()) {
    c = ExperimentConfig::load(g.config);
  } else if (synthetic) {
    c = ExperimentConfig::synthetic_batch();
  }
  if (g.seed) c.seed = *g.seed;
  if (!g.out.empty()) c.output = g.out;
  if (g.offline) c.offline = true;
  return c;
}

fs::path out_dir(const Globals& g) {
  fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  fs::create_directories(dir);
  return dir;
}

void print_warnings(const Warnings& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

ObservationPoint parse_observation(const std::string& text, const ProjectHistory& history) {
  if (text.empty() || text == "end") return {history.end_of_project()};
  for (const auto& r : history.releases()) {
    if (r.name == text) return {r.date};
  }
  return {parse_iso8601(text)};
}

std::string file_tag(const std::string& text) {
  std::string tag;
  for (const char c : text.empty() ? std::string("end") : text) {
    tag += std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ? c : '_';
  }
  return tag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dormant defects and snoring noise in defect prediction datasets"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "TOML experiment configuration");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Output directory");
  app.add_flag("--offline", g.offline, "Use cached Jira pages only");

  std::string repo, tag_pattern = ".*";
  auto* mine = app.add_subcommand("mine", "Mine a git repository into history.jsonl");
  mine->add_option("--repo", repo, "Repository path")->required();
  mine->add_option("--tag-pattern", tag_pattern, "Release tag regex");

  std::string endpoint, key, cache_dir;
  auto* issues = app.add_subcommand("issues", "Fetch bug tickets into issues.json");
  issues->add_option("--endpoint", endpoint, "Jira base URL");
  issues->add_option("--key", key, "Jira project key")->required();
  issues->add_option("--cache-dir", cache_dir, "Raw page cache");

  std::string history_file, issues_file;
  auto* szz = app.add_subcommand("szz", "Estimate introducing releases");
  for (auto* sub : {szz}) {
    sub->add_option("--history", history_file)->required()->check(CLI::ExistingFile);
    sub->add_option("--issues", issues_file)->required()->check(CLI::ExistingFile);
  }

  std::string observation;
  auto* label = app.add_subcommand("label", "Label classes at an observation point");
  label->add_option("--history", history_file)->required()->check(CLI::ExistingFile);
  label->add_option("--issues", issues_file)->required()->check(CLI::ExistingFile);
  label->add_option("--observation", observation,
                    "ISO-8601 instant, release name or 'end'");

  std::string project_name = "project";
  auto* dataset = app.add_subcommand("dataset", "Build D, SD and the training views");
  dataset->add_option("--history", history_file)->required()->check(CLI::ExistingFile);
  dataset->add_option("--issues", issues_file)->required()->check(CLI::ExistingFile);
  dataset->add_option("--name", project_name, "Project name");

  SynthConfig sc;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic project");
  synth->add_option("--name", sc.name);
  synth->add_option("--releases", sc.releases);
  synth->add_option("--classes", sc.classes);
  synth->add_option("--commits-per-release", sc.commits_per_release);
  synth->add_option("--defect-rate", sc.defect_rate);
  synth->add_option("--dormancy-fraction", sc.dormancy_fraction);
  synth->add_option("--av-availability", sc.av_availability);
  synth->add_option("--signal", sc.signal);

  bool synthetic = false;
  auto* rq1 = app.add_subcommand("rq1", "Snoring vs clean training data");
  auto* rq2 = app.add_subcommand("rq2", "Dropping non-defective tail releases");
  for (auto* sub : {rq1, rq2}) {
    sub->add_flag("--synthetic", synthetic, "Run the synthetic batch when no config is given");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Warnings warnings;
    const auto config = resolve(g, synthetic);
    if (mine->parsed()) {
      const auto history = ingest_history(repo, tag_pattern);
      print_warnings(history.warnings());
      write_history_jsonl(history, out_dir(g) / "history.jsonl");
    } else if (issues->parsed()) {
      std::vector<Ticket> tickets;
      if (g.offline) {
        if (cache_dir.empty()) throw InputError("--offline needs --cache-dir");
        tickets = load_cached_issues(cache_dir, key, &warnings);
      } else {
        if (endpoint.empty()) throw InputError("--endpoint is required online");
        JiraFetchOptions options;
        if (!cache_dir.empty()) options.cache_dir = fs::path(cache_dir);
        if (const char* token = std::getenv("JIRA_TOKEN")) options.token = token;
        tickets = fetch_issues(endpoint, key, options, &warnings);
      }
      write_issues_json(tickets, out_dir(g) / "issues.json");
    } else if (szz->parsed()) {
      const auto history = read_history_jsonl(history_file);
      const auto tickets = load_issues(issues_file, &warnings);
      const auto defects = resolve_defects(history, tickets, config.filter(), &warnings);
      write_introductions_csv(defects, out_dir(g) / "introductions.csv");
    } else if (label->parsed()) {
      const auto history = read_history_jsonl(history_file);
      const auto tickets = load_issues(issues_file, &warnings);
      const auto defects = resolve_defects(history, tickets, config.filter(), &warnings);
      const auto cells = label_at(history, defects, parse_observation(observation, history));
      write_labels_csv(cells, out_dir(g) / ("labels-" + file_tag(observation) + ".csv"));
    } else if (dataset->parsed()) {
      auto history = read_history_jsonl(history_file);
      const auto tickets = load_issues(issues_file, &warnings);
      const auto project = ProjectData::build(project_name, std::move(history), tickets,
                                              config.filter(), &warnings);
      const auto dir = out_dir(g);
      const auto d = assemble(project, {project.history.end_of_project()});
      export_csv(d, dir / "d.csv");
      auto split = split_project(project, config);
      export_csv(split.sd, dir / "sd.csv");
      export_csv(split.trns, dir / "trns.csv");
      export_csv(split.trs, dir / "trs.csv");
      export_csv(split.te, dir / "tens.csv");
    } else if (synth->parsed()) {
      if (g.seed) sc.seed = *g.seed;
      sc.validate();
      write_synth_project(generate(sc), out_dir(g));
    } else if (rq1->parsed() || rq2->parsed()) {
      if (g.config.empty() && !synthetic) {
        throw InputError("give --config or --synthetic");
      }
      const auto result = rq1->parsed() ? run_rq1(config) : run_rq2(config);
      warnings = result.warnings;
      std::cout << "wrote " << result.results.size() << " results and "
                << result.stats.size() << " comparisons to " << config.output.string()
                << '\n';
    }
    print_warnings(warnings);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DegenerateDataError& e) {
    std::cerr << "degenerate data: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
