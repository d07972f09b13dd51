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
#include "snoring/dataset.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "snoring/csv.h"

namespace snoring {

std::size_t Dataset::defective_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.defective; }));
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ProjectData ProjectData::build(std::string name, ProjectHistory history,
                               const std::vector<Ticket>& tickets,
                               const CosmeticFilter& filter, Warnings* warnings) {
  ProjectData p;
  p.name = std::move(name);
  p.history = std::move(history);
  p.defects = resolve_defects(p.history, tickets, filter, warnings);
  p.features = compute_feature_table(p.history, p.defects);
  return p;
}

Dataset assemble(const ProjectData& project, ObservationPoint observation) {
  Dataset d;
  d.releases = project.history.releases();
  d.observation = observation.instant;
  d.transformations.push_back("assemble");
  d.source_hashes = project.source_hashes;
  for (const auto& cell : label_at(project.history, project.defects, observation)) {
    d.rows.push_back({cell.class_path, cell.release,
                      project.features.at({cell.release, cell.class_path}),
                      cell.defective});
  }
  return d;
}

Dataset relabel(const Dataset& d, const ProjectData& project,
                ObservationPoint observation) {
  std::map<std::pair<int, std::string>, bool> labels;
  for (const auto& cell : label_at(project.history, project.defects, observation)) {
    labels.emplace(std::make_pair(cell.release, cell.class_path), cell.defective);
  }
  Dataset out = d;
  out.observation = observation.instant;
  out.transformations.push_back("relabel " + format_iso8601(observation.instant));
  for (auto& row : out.rows) {
    const auto it = labels.find({row.release, row.class_path});
    if (it == labels.end()) {
      throw InputError("row " + row.class_path + "@" + std::to_string(row.release) +
                       " is not a cell of project " + project.name);
    }
    row.defective = it->second;
  }
  return out;
}

Dataset keep_releases(const Dataset& d, int count, const std::string& step) {
  Dataset out;
  out.releases.assign(d.releases.begin(), d.releases.begin() + count);
  out.observation = d.observation;
  out.transformations = d.transformations;
  out.transformations.push_back(step);
  out.source_hashes = d.source_hashes;
  for (const auto& row : d.rows) {
    if (row.release < count) out.rows.push_back(row);
  }
  return out;
}

namespace {

int ceil_count(double value) { return static_cast<int>(std::ceil(value - 1e-9)); }

}  // namespace

Dataset truncate_recent(const Dataset& d, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw InputError("truncation fraction must lie in [0, 1)");
  }
  const int r = d.release_count();
  if (r < 4) {
    throw DegenerateDataError("truncation needs at least 4 releases, got " +
                              std::to_string(r));
  }
  const int keep = ceil_count(r * (1.0 - fraction));
  char step[64];
  std::snprintf(step, sizeof step, "truncate_recent %g", fraction);
  return keep_releases(d, keep, step);
}

Holdout ordered_holdout(const Dataset& sd, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InputError("train fraction must lie in (0, 1)");
  }
  const int r = sd.release_count();
  if (r < 3) {
    throw DegenerateDataError("holdout needs at least 3 releases, got " +
                              std::to_string(r));
  }
  const int cut = std::clamp(ceil_count(r * train_fraction), 1, r - 1);
  Holdout h;
  h.train = keep_releases(sd, cut, "holdout train");
  h.test = sd;
  h.test.transformations.push_back("holdout test");
  h.test.rows.clear();
  for (const auto& row : sd.rows) {
    if (row.release >= cut) h.test.rows.push_back(row);
  }
  h.test.releases.assign(sd.releases.begin() + cut, sd.releases.end());
  return h;
}

TrainingViews training_views(const ProjectData& project, const Dataset& train) {
  if (train.releases.empty()) throw InputError("empty training set");
  TrainingViews v;
  v.no_snoring = relabel(train, project, {project.history.end_of_project()});
  v.snoring = relabel(train, project, {train.releases.back().date});
  return v;
}

Dataset drop_nondefective_tail(const Dataset& trs, int k) {
  const int r = trs.release_count();
  if (k < 0 || k > r) {
    throw InputError("cannot drop " + std::to_string(k) + " of " + std::to_string(r) +
                     " releases");
  }
  Dataset out = trs;
  out.transformations.push_back("drop_nondefective_tail " + std::to_string(k));
  if (k == 0) return out;
  const int first_dropped = trs.releases[static_cast<std::size_t>(r - k)].ordinal;
  std::erase_if(out.rows, [&](const DatasetRow& row) {
    return row.release >= first_dropped && !row.defective;
  });
  return out;
}

std::filesystem::path meta_path(const std::filesystem::path& csv_file) {
  auto p = csv_file;
  p.replace_extension(".meta.json");
  return p;
}

namespace {

std::vector<std::string> header() {
  std::vector<std::string> h{"class_path", "release_ordinal"};
  for (const auto name : feature_names()) h.emplace_back(name);
  h.emplace_back("label");
  return h;
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw InputError("column " + what + ": not an integer: '" + text + "'");
  }
  return v;
}

}  // namespace

void export_csv(const Dataset& d, const std::filesystem::path& file) {
  {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw InputError("cannot write " + file.string());
    write_csv_row(out, header());
    std::vector<std::string> fields;
    for (const auto& row : d.rows) {
      fields.clear();
      fields.push_back(row.class_path);
      fields.push_back(std::to_string(row.release));
      for (const double v : row.features) fields.push_back(format_real(v));
      fields.emplace_back(row.defective ? "1" : "0");
      write_csv_row(out, fields);
    }
  }
  nlohmann::ordered_json meta;
  meta["observation"] = d.observation ? nlohmann::ordered_json(format_iso8601(*d.observation))
                                      : nlohmann::ordered_json(nullptr);
  meta["transformations"] = d.transformations;
  meta["source_hashes"] = d.source_hashes;
  auto& releases = meta["releases"] = nlohmann::ordered_json::array();
  for (const auto& r : d.releases) {
    releases.push_back({{"name", r.name}, {"ordinal", r.ordinal}, {"date", format_iso8601(r.date)}});
  }
  std::ofstream out(meta_path(file), std::ios::binary);
  if (!out) throw InputError("cannot write " + meta_path(file).string());
  out << meta.dump(2) << '\n';
}

Dataset import_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot read " + file.string());
  Dataset d;
  std::vector<std::string> fields;
  const auto expected = header();
  if (!read_csv_row(in, fields)) throw InputError(file.string() + ": missing header");
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i >= fields.size()) throw InputError("missing column " + expected[i]);
    if (fields[i] != expected[i]) {
      throw InputError("unexpected column '" + fields[i] + "' where " + expected[i] +
                       " belongs");
    }
  }
  if (fields.size() > expected.size()) {
    throw InputError("unexpected column '" + fields[expected.size()] + "'");
  }
  while (read_csv_row(in, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != expected.size()) {
      throw InputError(file.string() + ": row with " + std::to_string(fields.size()) +
                       " fields");
    }
    DatasetRow row;
    row.class_path = fields[0];
    row.release = parse_int(fields[1], expected[1]);
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      try {
        row.features[i] = parse_real(fields[2 + i]);
      } catch (const InputError&) {
        throw InputError("column " + expected[2 + i] + ": not a number: '" +
                         fields[2 + i] + "'");
      }
    }
    const auto& label = fields.back();
    if (label != "0" && label != "1") {
      throw InputError("column label: expected 0 or 1, got '" + label + "'");
    }
    row.defective = label == "1";
    d.rows.push_back(std::move(row));
  }

  std::ifstream meta_in(meta_path(file), std::ios::binary);
  if (!meta_in) return d;
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(meta_in);
    if (!meta["observation"].is_null()) {
      d.observation = parse_iso8601(meta["observation"].get<std::string>());
    }
    d.transformations = meta["transformations"].get<std::vector<std::string>>();
    d.source_hashes = meta["source_hashes"].get<std::map<std::string, std::string>>();
    for (const auto& r : meta["releases"]) {
      d.releases.push_back({r["name"].get<std::string>(), r["ordinal"].get<int>(),
                            parse_iso8601(r["date"].get<std::string>())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(meta_path(file).string() + ": " + e.what());
  }
  return d;
}

}  // namespace snoring
