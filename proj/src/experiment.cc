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
#include "snoring/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "snoring/csv.h"
#include "snoring/git_miner.h"
#include "snoring/history_io.h"
#include "snoring/jira_client.h"
#include "snoring/random.h"
#include "toml.hpp"

namespace snoring {

namespace fs = std::filesystem;

std::string_view to_string(CosmeticRule rule) {
  switch (rule) {
    case CosmeticRule::kWhitespace:
      return "whitespace";
    case CosmeticRule::kComment:
      return "comment";
    case CosmeticRule::kDocumentation:
      return "documentation";
    case CosmeticRule::kIndentation:
      return "indentation";
  }
  return "?";
}

CosmeticRule cosmetic_rule_from_string(std::string_view text) {
  const auto standard = CosmeticFilter::standard();
  for (const auto rule : standard.rules()) {
    if (to_string(rule) == text) return rule;
  }
  throw InputError("unknown cosmetic rule '" + std::string(text) + "'");
}

ExperimentConfig ExperimentConfig::synthetic_batch() {
  ExperimentConfig c;
  c.synth_projects = 10;
  return c;
}

namespace {

void check_keys(const toml::table& table, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  for (const auto& [key, node] : table) {
    if (std::find(allowed.begin(), allowed.end(), key.str()) == allowed.end()) {
      throw InputError("unknown key '" + std::string(key.str()) + "' in " + where);
    }
  }
}

std::string location(const toml::node& node) {
  const auto& src = node.source();
  return "line " + std::to_string(src.begin.line);
}

template <typename T>
void read(const toml::table& table, std::string_view key, T& out) {
  const toml::node* node = table.get(key);
  if (!node) return;
  if constexpr (std::is_same_v<T, bool>) {
    if (auto v = node->value_exact<bool>()) {
      out = *v;
      return;
    }
  } else if constexpr (std::is_integral_v<T>) {
    if (auto v = node->value_exact<std::int64_t>()) {
      if (*v < 0 && std::is_unsigned_v<T>) {
        throw InputError(std::string(key) + " must not be negative");
      }
      out = static_cast<T>(*v);
      return;
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (auto v = node->value<double>()) {
      out = *v;
      return;
    }
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (auto v = node->value_exact<std::string>()) {
      out = *v;
      return;
    }
  } else if constexpr (std::is_same_v<T, fs::path>) {
    if (auto v = node->value_exact<std::string>()) {
      out = *v;
      return;
    }
  }
  throw InputError("wrong type for '" + std::string(key) + "' at " + location(*node));
}

std::vector<std::string> read_strings(const toml::table& table, std::string_view key,
                                      std::vector<std::string> fallback) {
  const toml::node* node = table.get(key);
  if (!node) return fallback;
  const auto* array = node->as_array();
  if (!array) throw InputError("'" + std::string(key) + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : *array) {
    const auto v = item.value_exact<std::string>();
    if (!v) throw InputError("'" + std::string(key) + "' must hold strings");
    out.push_back(*v);
  }
  return out;
}

const toml::table* section(const toml::table& root, std::string_view name) {
  const toml::node* node = root.get(name);
  if (!node) return nullptr;
  const auto* t = node->as_table();
  if (!t) throw InputError("'" + std::string(name) + "' must be a table");
  return t;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse_toml(std::string_view text) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw InputError("config: " + std::string(e.description()) + " at line " +
                     std::to_string(e.source().begin.line) + ", column " +
                     std::to_string(e.source().begin.column));
  }
  ExperimentConfig c;
  check_keys(root,
             {"seed", "output", "offline", "projects", "synth", "szz", "dataset",
              "learners", "stats"},
             "config");
  read(root, "seed", c.seed);
  read(root, "output", c.output);
  read(root, "offline", c.offline);

  if (const auto* node = root.get("projects")) {
    const auto* array = node->as_array();
    if (!array) throw InputError("'projects' must be an array of tables");
    for (const auto& item : *array) {
      const auto* t = item.as_table();
      if (!t) throw InputError("'projects' must be an array of tables");
      check_keys(*t,
                 {"name", "repo", "history", "tag_pattern", "issues", "jira_endpoint",
                  "jira_key", "cache_dir"},
                 "[[projects]]");
      ProjectSource p;
      read(*t, "name", p.name);
      read(*t, "repo", p.repo);
      read(*t, "history", p.history_file);
      read(*t, "tag_pattern", p.tag_pattern);
      read(*t, "issues", p.issues_file);
      read(*t, "jira_endpoint", p.jira_endpoint);
      read(*t, "jira_key", p.jira_key);
      read(*t, "cache_dir", p.cache_dir);
      if (p.name.empty()) throw InputError("[[projects]] entry without a name");
      if (p.repo.empty() && p.history_file.empty()) {
        throw InputError("project " + p.name + " needs 'repo' or 'history'");
      }
      if (p.issues_file.empty() && p.jira_endpoint.empty()) {
        throw InputError("project " + p.name + " needs 'issues' or 'jira_endpoint'");
      }
      if (p.jira_key.empty()) p.jira_key = p.name;
      c.projects.push_back(std::move(p));
    }
  }
  if (const auto* t = section(root, "synth")) {
    check_keys(*t,
               {"projects", "name", "releases", "classes", "commits_per_release",
                "defect_rate", "dormancy_fraction", "av_availability", "signal",
                "release_spacing_days"},
               "[synth]");
    read(*t, "projects", c.synth_projects);
    read(*t, "name", c.synth.name);
    read(*t, "releases", c.synth.releases);
    read(*t, "classes", c.synth.classes);
    read(*t, "commits_per_release", c.synth.commits_per_release);
    read(*t, "defect_rate", c.synth.defect_rate);
    read(*t, "dormancy_fraction", c.synth.dormancy_fraction);
    read(*t, "av_availability", c.synth.av_availability);
    read(*t, "signal", c.synth.signal);
    read(*t, "release_spacing_days", c.synth.release_spacing_days);
    if (c.synth_projects < 0) throw InputError("synth.projects must not be negative");
    if (c.synth_projects > 0) c.synth.validate();
  }
  if (const auto* t = section(root, "szz")) {
    check_keys(*t, {"cosmetic_rules"}, "[szz]");
    std::vector<std::string> names;
    for (const auto r : c.cosmetic_rules) names.emplace_back(to_string(r));
    c.cosmetic_rules.clear();
    for (const auto& name : read_strings(*t, "cosmetic_rules", names)) {
      c.cosmetic_rules.push_back(cosmetic_rule_from_string(name));
    }
  }
  if (const auto* t = section(root, "dataset")) {
    check_keys(*t, {"truncate_fraction", "train_fraction"}, "[dataset]");
    read(*t, "truncate_fraction", c.truncate_fraction);
    read(*t, "train_fraction", c.train_fraction);
    if (!(c.truncate_fraction >= 0 && c.truncate_fraction < 1)) {
      throw InputError("dataset.truncate_fraction must lie in [0, 1)");
    }
    if (!(c.train_fraction > 0 && c.train_fraction < 1)) {
      throw InputError("dataset.train_fraction must lie in (0, 1)");
    }
  }
  if (const auto* t = section(root, "learners")) {
    check_keys(*t, {"classifiers"}, "[learners]");
    std::vector<std::string> names;
    for (const auto k : c.classifiers) names.emplace_back(to_string(k));
    c.classifiers.clear();
    for (const auto& name : read_strings(*t, "classifiers", names)) {
      c.classifiers.push_back(learner_kind_from_string(name));
    }
    if (c.classifiers.empty()) throw InputError("learners.classifiers is empty");
  }
  if (const auto* t = section(root, "stats")) {
    check_keys(*t, {"drop_k", "permutation_iterations"}, "[stats]");
    if (const auto* node = t->get("drop_k")) {
      const auto* array = node->as_array();
      if (!array) throw InputError("'drop_k' must be an array");
      c.drop_k.clear();
      for (const auto& item : *array) {
        const auto v = item.value_exact<std::int64_t>();
        if (!v || *v < 0) throw InputError("'drop_k' must hold non-negative integers");
        c.drop_k.push_back(static_cast<int>(*v));
      }
      std::sort(c.drop_k.begin(), c.drop_k.end());
      c.drop_k.erase(std::unique(c.drop_k.begin(), c.drop_k.end()), c.drop_k.end());
      if (c.drop_k.empty()) throw InputError("stats.drop_k is empty");
    }
    read(*t, "permutation_iterations", c.permutation_iterations);
    if (c.permutation_iterations < 1) {
      throw InputError("stats.permutation_iterations must be positive");
    }
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot read config " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_toml(buf.str());
}

std::string ExperimentConfig::to_toml() const {
  toml::table root;
  root.insert("seed", static_cast<std::int64_t>(seed));
  root.insert("output", output.generic_string());
  root.insert("offline", offline);
  toml::array projects_array;
  for (const auto& p : projects) {
    projects_array.push_back(toml::table{{"name", p.name},
                                         {"repo", p.repo.generic_string()},
                                         {"history", p.history_file.generic_string()},
                                         {"tag_pattern", p.tag_pattern},
                                         {"issues", p.issues_file.generic_string()},
                                         {"jira_endpoint", p.jira_endpoint},
                                         {"jira_key", p.jira_key},
                                         {"cache_dir", p.cache_dir.generic_string()}});
  }
  root.insert("projects", std::move(projects_array));
  root.insert("synth", toml::table{{"projects", synth_projects},
                                   {"name", synth.name},
                                   {"releases", synth.releases},
                                   {"classes", synth.classes},
                                   {"commits_per_release", synth.commits_per_release},
                                   {"defect_rate", synth.defect_rate},
                                   {"dormancy_fraction", synth.dormancy_fraction},
                                   {"av_availability", synth.av_availability},
                                   {"signal", synth.signal},
                                   {"release_spacing_days", synth.release_spacing_days}});
  toml::array rules;
  for (const auto r : cosmetic_rules) rules.push_back(std::string(to_string(r)));
  root.insert("szz", toml::table{{"cosmetic_rules", std::move(rules)}});
  root.insert("dataset", toml::table{{"truncate_fraction", truncate_fraction},
                                     {"train_fraction", train_fraction}});
  toml::array kinds;
  for (const auto k : classifiers) kinds.push_back(std::string(to_string(k)));
  root.insert("learners", toml::table{{"classifiers", std::move(kinds)}});
  toml::array ks;
  for (const int k : drop_k) ks.push_back(k);
  root.insert("stats", toml::table{{"drop_k", std::move(ks)},
                                   {"permutation_iterations", permutation_iterations}});
  std::ostringstream out;
  out << root << '\n';
  return out.str();
}

namespace {

std::string history_hash(const ProjectHistory& history) {
  std::ostringstream out;
  write_history_jsonl(history, out);
  return content_hash(out.str());
}

std::string tickets_hash(const std::vector<Ticket>& tickets) {
  nlohmann::json all = nlohmann::json::array();
  for (const auto& t : tickets) all.push_back(issue_to_json(t));
  return content_hash(all.dump());
}

LoadedProject finish(ProjectData data) {
  LoadedProject p;
  const auto& h = data.history;
  const auto r = static_cast<double>(h.releases().size());
  if (!h.commits().empty() && r > 0) {
    const double span = static_cast<double>(to_unix(h.releases().back().date) -
                                            to_unix(h.commits().front().timestamp));
    p.days_per_release = span / 86400.0 / r;
    double in_releases = 0;
    for (std::size_t i = 0; i < h.commits().size(); ++i) {
      in_releases += h.release_ordinal(i) < h.post_last_ordinal();
    }
    p.commits_per_release = in_releases / r;
  }
  p.data = std::move(data);
  return p;
}

}  // namespace

std::vector<LoadedProject> load_projects(const ExperimentConfig& config, Warnings* warnings) {
  std::vector<LoadedProject> out;
  const auto filter = config.filter();
  for (int i = 0; i < config.synth_projects; ++i) {
    SynthConfig sc = config.synth;
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "%02d", i + 1);
    sc.name = config.synth.name + suffix;
    sc.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
    auto synth = generate(sc);
    const auto hashes = std::map<std::string, std::string>{
        {"history", history_hash(synth.history)}, {"issues", tickets_hash(synth.tickets)}};
    auto data = ProjectData::build(sc.name, std::move(synth.history), synth.tickets, filter,
                                   warnings);
    data.source_hashes = hashes;
    out.push_back(finish(std::move(data)));
  }
  for (const auto& source : config.projects) {
    ProjectHistory history = source.history_file.empty()
                                 ? ingest_history(source.repo, source.tag_pattern)
                                 : read_history_jsonl(source.history_file);
    std::vector<Ticket> tickets;
    if (!source.issues_file.empty()) {
      tickets = load_issues(source.issues_file, warnings);
    } else if (config.offline) {
      tickets = load_cached_issues(source.cache_dir, source.jira_key, warnings);
    } else {
      JiraFetchOptions options;
      if (!source.cache_dir.empty()) options.cache_dir = source.cache_dir;
      tickets = fetch_issues(source.jira_endpoint, source.jira_key, options, warnings);
    }
    if (warnings) {
      for (const auto& w : history.warnings()) warnings->push_back(source.name + ": " + w);
    }
    const auto hashes = std::map<std::string, std::string>{
        {"history", history_hash(history)}, {"issues", tickets_hash(tickets)}};
    auto data = ProjectData::build(source.name, std::move(history), tickets, filter, warnings);
    data.source_hashes = hashes;
    out.push_back(finish(std::move(data)));
  }
  if (out.empty()) throw InputError("no projects configured");
  return out;
}

ProjectSplit split_project(const ProjectData& project, const ExperimentConfig& config) {
  ProjectSplit s;
  const auto d = assemble(project, {project.history.end_of_project()});
  s.sd = truncate_recent(d, config.truncate_fraction);
  auto holdout = ordered_holdout(s.sd, config.train_fraction);
  auto views = training_views(project, holdout.train);
  s.trns = std::move(views.no_snoring);
  s.trs = std::move(views.snoring);
  s.te = std::move(holdout.test);
  return s;
}

namespace {

Evaluation evaluate_selected(LearnerKind kind, const Table& train_table,
                             const std::vector<std::size_t>& selected, const Dataset& test,
                             std::uint64_t seed, TrainedModel* model_out) {
  if (test.rows.empty()) throw DegenerateDataError("empty test set");
  const auto model = train(kind, train_table, seed, selected);
  std::vector<bool> predicted, truth;
  std::vector<double> scores;
  std::vector<double> row(kFeatureCount);
  for (const auto& r : test.rows) {
    row.assign(r.features.begin(), r.features.end());
    const auto p = model.predict(row);
    predicted.push_back(p.defective);
    scores.push_back(p.score);
    truth.push_back(r.defective);
  }
  Evaluation e;
  e.cm = confusion(predicted, truth);
  e.report = score(e.cm);
  e.report.auc = auc(scores, truth);
  e.selected = model.selected_names();
  if (model_out) *model_out = model;
  return e;
}

}  // namespace

Evaluation evaluate(LearnerKind kind, const Dataset& train, const Dataset& test,
                    std::uint64_t seed, TrainedModel* model_out, Warnings* warnings) {
  const auto table = to_table(train);
  const auto cfs = cfs_select(table, warnings);
  return evaluate_selected(kind, table, cfs.selected, test, seed, model_out);
}

void write_results_csv(const std::vector<ResultRow>& rows, const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  write_csv_row(out, {"project", "classifier", "dataset_variant", "metric", "value"});
  for (const auto& r : rows) {
    write_csv_row(out, {r.project, r.classifier, r.variant, r.metric, format_real(r.value)});
  }
}

void write_stats_csv(const std::vector<StatsRow>& rows, const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  write_csv_row(out, {"comparison", "metric", "p_raw", "p_holm", "delta", "magnitude"});
  for (const auto& r : rows) {
    write_csv_row(out, {r.comparison, r.metric, format_real(r.p_raw), format_real(r.p_holm),
                        format_real(r.delta), r.magnitude});
  }
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Cell {
  Table table;
  std::vector<std::size_t> selected;
};

Cell prepare(const Dataset& train, Warnings* warnings) {
  Cell c;
  c.table = to_table(train);
  c.selected = cfs_select(c.table, warnings).selected;
  return c;
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  out << text;
}

void write_warnings(const Warnings& warnings, const fs::path& file) {
  std::string text;
  for (const auto& w : warnings) text += w + "\n";
  write_text(file, text);
}

void prepare_output(const ExperimentConfig& config) {
  fs::create_directories(config.output);
  write_text(config.output / "resolved_config.toml", config.to_toml());
}

fs::path project_dir(const ExperimentConfig& config, const std::string& name) {
  const auto dir = config.output / "projects" / name;
  fs::create_directories(dir / "models");
  return dir;
}

void persist_split(const ProjectData& project, const ProjectSplit& split, const fs::path& dir) {
  write_introductions_csv(project.defects, dir / "introductions.csv");
  export_csv(split.sd, dir / "sd.csv");
  export_csv(split.trns, dir / "trns.csv");
  export_csv(split.trs, dir / "trs.csv");
  export_csv(split.te, dir / "tens.csv");
}

void persist_model(const TrainedModel& model, const fs::path& file) {
  write_text(file, model.to_json().dump() + "\n");
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t project, std::size_t classifier,
                        std::size_t variant) {
  return derive_seed(derive_seed(seed, 1000 + project), classifier * 64 + variant);
}

void add_results(std::vector<ResultRow>& rows, const std::string& project, LearnerKind kind,
                 const std::string& variant, const PerformanceReport& report) {
  for (const auto m : all_metrics()) {
    rows.push_back({project, std::string(to_string(kind)), variant, std::string(to_string(m)),
                    report.get(m)});
  }
}

double median(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

// Wilcoxon plus Cliff's delta per comparison, Holm-adjusted within each
// group of rows sharing a metric.
std::vector<StatsRow> compare(const std::vector<std::pair<std::string, std::string>>& keys,
                              const std::vector<Pairs>& samples, Warnings* warnings) {
  std::vector<StatsRow> rows(keys.size());
  std::map<std::string, std::vector<std::size_t>> by_metric;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto& row = rows[i];
    row.comparison = keys[i].first;
    row.metric = keys[i].second;
    std::size_t dropped = 0;
    Pairs defined;
    for (const auto& p : samples[i]) {
      if (std::isnan(p.first) || std::isnan(p.second)) {
        ++dropped;
      } else {
        defined.push_back(p);
      }
    }
    if (dropped && warnings) {
      warnings->push_back(row.comparison + " " + row.metric + ": " + std::to_string(dropped) +
                          " undefined pairs excluded");
    }
    row.p_raw = row.p_holm = kNaN;
    row.delta = kNaN;
    if (defined.empty()) {
      row.magnitude = "degenerate";
      continue;
    }
    const auto effect = cliffs_delta_paired(defined);
    row.delta = effect.delta;
    try {
      row.p_raw = wilcoxon_signed_rank(defined).p_value;
      row.magnitude = effect.magnitude;
      by_metric[row.metric].push_back(i);
    } catch (const DegenerateDataError&) {
      row.magnitude = "degenerate";
    }
  }
  for (const auto& [metric, members] : by_metric) {
    std::vector<double> p;
    for (const auto i : members) p.push_back(rows[i].p_raw);
    const auto adjusted = holm_adjust(p);
    for (std::size_t k = 0; k < members.size(); ++k) rows[members[k]].p_holm = adjusted[k];
  }
  return rows;
}

void write_frequency_spearman(const std::vector<LoadedProject>& projects,
                              const fs::path& file, Warnings* warnings) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  write_csv_row(out, {"x", "y", "rho", "p_value", "n"});
  std::vector<double> days, commits;
  for (const auto& p : projects) {
    days.push_back(p.days_per_release);
    commits.push_back(p.commits_per_release);
  }
  if (projects.size() < 3) {
    if (warnings) warnings->push_back("release frequency correlation needs 3 projects");
    return;
  }
  const auto r = spearman(days, commits);
  write_csv_row(out, {"days_per_release", "commits_per_release", format_real(r.statistic),
                      format_real(r.p_value), std::to_string(r.n)});
}

}  // namespace

ExperimentOutput run_rq1(const ExperimentConfig& config) {
  ExperimentOutput out;
  prepare_output(config);
  const auto projects = load_projects(config, &out.warnings);

  // results[project][classifier][variant] with variant 0 = TrNS, 1 = TrS.
  std::vector<std::vector<std::array<PerformanceReport, 2>>> reports(projects.size());
  std::ofstream snoring_file(config.output / "snoring.csv", std::ios::binary);
  write_csv_row(snoring_file,
                {"project", "trns_defective", "trs_defective", "snoring_loss", "flipped"});
  for (std::size_t pi = 0; pi < projects.size(); ++pi) {
    const auto& project = projects[pi].data;
    const auto split = split_project(project, config);
    const auto dir = project_dir(config, project.name);
    persist_split(project, split, dir);

    const auto ground = static_cast<int>(split.trns.defective_count());
    const auto observed = static_cast<int>(split.trs.defective_count());
    const double loss = ground > 0 ? snoring_loss(ground, observed) : kNaN;
    write_csv_row(snoring_file, {project.name, std::to_string(ground), std::to_string(observed),
                                 format_real(loss), std::to_string(ground - observed)});

    const Cell cells[2] = {prepare(split.trns, &out.warnings), prepare(split.trs, &out.warnings)};
    const char* const variants[2] = {"TrNS", "TrS"};
    reports[pi].resize(config.classifiers.size());
    for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
      const auto kind = config.classifiers[ci];
      for (std::size_t v = 0; v < 2; ++v) {
        TrainedModel model;
        const auto e = evaluate_selected(kind, cells[v].table, cells[v].selected, split.te,
                                         cell_seed(config.seed, pi, ci, v), &model);
        persist_model(model, dir / "models" /
                                 (std::string(to_string(kind)) + "-" + variants[v] + ".json"));
        reports[pi][ci][v] = e.report;
        add_results(out.results, project.name, kind, variants[v], e.report);
      }
      PerformanceReport rl;
      for (const auto m : all_metrics()) {
        const double value = relative_loss(reports[pi][ci][1].get(m), reports[pi][ci][0].get(m));
        out.results.push_back({project.name, std::string(to_string(kind)), "relative_loss",
                               std::string(to_string(m)), value});
      }
    }
  }

  std::vector<std::pair<std::string, std::string>> keys;
  std::vector<Pairs> samples;
  std::ofstream summary(config.output / "rq1_summary.csv", std::ios::binary);
  write_csv_row(summary, {"classifier", "metric", "median_trs", "median_trns",
                          "median_relative_loss"});
  for (const auto m : all_metrics()) {
    for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
      Pairs pairs;
      std::vector<double> trs, trns, rl;
      for (std::size_t pi = 0; pi < projects.size(); ++pi) {
        const double s = reports[pi][ci][1].get(m), ns = reports[pi][ci][0].get(m);
        pairs.emplace_back(s, ns);
        trs.push_back(s);
        trns.push_back(ns);
        rl.push_back(relative_loss(s, ns));
      }
      const std::string name(to_string(config.classifiers[ci]));
      keys.emplace_back("TrS_vs_TrNS/" + name, std::string(to_string(m)));
      samples.push_back(std::move(pairs));
      write_csv_row(summary, {name, std::string(to_string(m)), format_real(median(trs)),
                              format_real(median(trns)), format_real(median(rl))});
    }
  }
  out.stats = compare(keys, samples, &out.warnings);

  write_results_csv(out.results, config.output / "results.csv");
  write_stats_csv(out.stats, config.output / "stats.csv");
  write_frequency_spearman(projects, config.output / "release_frequency.csv", &out.warnings);
  write_warnings(out.warnings, config.output / "warnings.txt");
  return out;
}

ExperimentOutput run_rq2(const ExperimentConfig& config) {
  ExperimentOutput out;
  prepare_output(config);
  const auto projects = load_projects(config, &out.warnings);
  const int max_k = config.drop_k.back();
  const auto& ks = config.drop_k;
  const auto base_k = std::find(ks.begin(), ks.end(), 0);
  if (base_k == ks.end()) throw InputError("stats.drop_k must include 0 as the baseline");

  // reports[project][classifier][k index]
  std::vector<std::vector<std::vector<PerformanceReport>>> reports(projects.size());
  for (std::size_t pi = 0; pi < projects.size(); ++pi) {
    const auto& project = projects[pi].data;
    const auto split = split_project(project, config);
    const int tr_releases = split.trs.release_count();
    if (max_k >= tr_releases) {
      throw DegenerateDataError("project " + project.name + ": training set has " +
                                std::to_string(tr_releases) +
                                " releases; max feasible k is " +
                                std::to_string(tr_releases - 1));
    }
    const auto dir = project_dir(config, project.name);
    persist_split(project, split, dir);
    std::vector<Dataset> variants;
    std::vector<Cell> cells;
    for (const int k : ks) {
      variants.push_back(drop_nondefective_tail(split.trs, k));
      export_csv(variants.back(), dir / ("trs-" + std::to_string(k) + ".csv"));
      cells.push_back(prepare(variants.back(), &out.warnings));
    }
    reports[pi].assign(config.classifiers.size(), {});
    for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
      const auto kind = config.classifiers[ci];
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        const std::string variant = "TrS-" + std::to_string(ks[ki]);
        TrainedModel model;
        const auto e = evaluate_selected(kind, cells[ki].table, cells[ki].selected, split.te,
                                         cell_seed(config.seed, pi, ci, 16 + ki), &model);
        persist_model(model,
                      dir / "models" / (std::string(to_string(kind)) + "-" + variant + ".json"));
        reports[pi][ci].push_back(e.report);
        add_results(out.results, project.name, kind, variant, e.report);
      }
    }
  }

  const std::size_t base = static_cast<std::size_t>(base_k - ks.begin());
  auto gain = [&](std::size_t pi, std::size_t ci, std::size_t ki, Metric m) {
    const double b = reports[pi][ci][base].get(m);
    const double v = reports[pi][ci][ki].get(m);
    if (std::isnan(b) || std::isnan(v) || b == 0) return kNaN;
    return (v - b) / b;
  };

  {
    std::ofstream gains(config.output / "gains.csv", std::ios::binary);
    write_csv_row(gains, {"k", "metric", "mean_gain", "n"});
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      for (const auto m : all_metrics()) {
        double sum = 0;
        int n = 0;
        for (std::size_t pi = 0; pi < projects.size(); ++pi) {
          for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
            const double g = gain(pi, ci, ki, m);
            if (std::isnan(g)) continue;
            sum += g;
            ++n;
          }
        }
        write_csv_row(gains, {std::to_string(ks[ki]), std::string(to_string(m)),
                              format_real(n ? sum / n : kNaN), std::to_string(n)});
      }
    }
  }

  {
    std::ofstream perm(config.output / "permutation.csv", std::ios::binary);
    write_csv_row(perm, {"metric", "factor", "statistic", "p_value", "iterations"});
    std::vector<std::string> factors;
    if (ks.size() > 1) factors.push_back("drop_count");
    if (config.classifiers.size() > 1) factors.push_back("classifier");
    if (projects.size() < 2 || factors.empty()) {
      out.warnings.push_back("permutation test skipped: needs 2 projects and 2 levels");
    } else {
      for (std::size_t mi = 0; mi < all_metrics().size(); ++mi) {
        const auto m = all_metrics()[mi];
        std::vector<Measurement> measurements;
        for (std::size_t pi = 0; pi < projects.size(); ++pi) {
          for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
            for (std::size_t ki = 0; ki < ks.size(); ++ki) {
              measurements.push_back({projects[pi].data.name,
                                      std::string(to_string(config.classifiers[ci])), ks[ki],
                                      reports[pi][ci][ki].get(m)});
            }
          }
        }
        for (const auto& r : permutation_test_repeated(measurements,
                                                       config.permutation_iterations,
                                                       derive_seed(config.seed, 5000 + mi),
                                                       factors)) {
          write_csv_row(perm, {std::string(to_string(m)), r.factor, format_real(r.statistic),
                               format_real(r.p_value), std::to_string(r.iterations)});
        }
      }
    }
  }

  std::vector<std::pair<std::string, std::string>> keys;
  std::vector<Pairs> samples;
  for (const auto m : all_metrics()) {
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      if (ki == base) continue;
      Pairs pairs;
      for (std::size_t pi = 0; pi < projects.size(); ++pi) {
        for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
          pairs.emplace_back(reports[pi][ci][ki].get(m), reports[pi][ci][base].get(m));
        }
      }
      keys.emplace_back("TrS-" + std::to_string(ks[ki]) + "_vs_TrS-0", std::string(to_string(m)));
      samples.push_back(std::move(pairs));
    }
  }
  out.stats = compare(keys, samples, &out.warnings);

  {
    std::ofstream freq(config.output / "gain_frequency.csv", std::ios::binary);
    write_csv_row(freq, {"metric", "frequency_measure", "rho", "p_value", "n"});
    const auto k1 = std::find(ks.begin(), ks.end(), 1);
    if (k1 != ks.end() && projects.size() >= 3) {
      const auto ki = static_cast<std::size_t>(k1 - ks.begin());
      for (const auto m : {Metric::kPrecision, Metric::kRecall}) {
        std::vector<double> gains, days, commits;
        for (std::size_t pi = 0; pi < projects.size(); ++pi) {
          double sum = 0;
          int n = 0;
          for (std::size_t ci = 0; ci < config.classifiers.size(); ++ci) {
            const double g = gain(pi, ci, ki, m);
            if (std::isnan(g)) continue;
            sum += g;
            ++n;
          }
          if (n == 0) continue;
          gains.push_back(sum / n);
          days.push_back(projects[pi].days_per_release);
          commits.push_back(projects[pi].commits_per_release);
        }
        if (gains.size() < 3) continue;
        for (const auto& [name, xs] : {std::pair<std::string, const std::vector<double>*>{
                                           "days_per_release", &days},
                                       {"commits_per_release", &commits}}) {
          const auto r = spearman(gains, *xs);
          write_csv_row(freq, {std::string(to_string(m)), name, format_real(r.statistic),
                               format_real(r.p_value), std::to_string(r.n)});
        }
      }
    } else {
      out.warnings.push_back("gain/frequency correlation needs k=1 and 3 projects");
    }
  }

  write_results_csv(out.results, config.output / "results.csv");
  write_stats_csv(out.stats, config.output / "stats.csv");
  write_warnings(out.warnings, config.output / "warnings.txt");
  return out;
}

}  // namespace snoring
