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
#include "snoring/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "snoring/csv.h"
#include "snoring/history_io.h"
#include "snoring/random.h"

namespace snoring {

void SynthConfig::validate() const {
  if (releases < 6) throw InputError("synthetic projects need at least 6 releases");
  if (classes < 1) throw InputError("synthetic projects need at least 1 class");
  if (!(commits_per_release >= 1)) throw InputError("commits_per_release must be >= 1");
  if (!(defect_rate >= 0)) throw InputError("defect_rate must be >= 0");
  if (!(dormancy_fraction > 0 && dormancy_fraction < 1)) {
    throw InputError("dormancy fraction must lie in (0, 1)");
  }
  if (!(av_availability >= 0 && av_availability <= 1)) {
    throw InputError("av_availability must lie in [0, 1]");
  }
  if (!(signal >= 0)) throw InputError("signal must be >= 0");
  if (!(release_spacing_days >= 1)) throw InputError("release spacing must be >= 1 day");
  if (name.empty()) throw InputError("project name must not be empty");
}

namespace {

constexpr std::int64_t kDay = 86400;
constexpr std::int64_t kStart = 1262304000;  // 2010-01-01
constexpr double kInitialClassShare = 0.4;
const char* const kReadme = "README.md";

int poisson(Rng& rng, double mean) {
  const double limit = std::exp(-mean);
  int k = 0;
  double p = uniform_real(rng);
  while (p > limit) {
    ++k;
    p *= uniform_real(rng);
  }
  return k;
}

// Support {1, 2, ...} with the given mean.
int geometric(Rng& rng, double mean) {
  if (mean <= 1) return 1;
  const double p = 1 / mean;
  const double u = 1 - uniform_real(rng);  // (0, 1]
  return 1 + static_cast<int>(std::floor(std::log(u) / std::log(1 - p)));
}

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(hi - lo + 1)));
}

struct Line {
  std::string text;
  int bug = -1;
};

struct Defect {
  int cls = 0;
  int intro = 0;
  int fixed = 0;
  std::int64_t intro_ts = 0;
  std::int64_t fix_ts = 0;
};

enum class PlanKind { kRegular, kReindent, kIntro, kFix, kBirth };

struct Plan {
  std::int64_t ts = 0;
  PlanKind kind = PlanKind::kRegular;
  int release = 0;
  int defect = -1;
  std::vector<int> classes;
  bool readme = false;
};

class Generator {
 public:
  explicit Generator(const SynthConfig& config) : config_(config), rng_(config.seed) {}

  SynthProject run() {
    plan_releases();
    plan_births();
    plan_defects();
    plan_commits();
    materialize();
    SynthProject out;
    out.history = ProjectHistory::build(std::move(commits_), releases_);
    make_tickets(out);
    return out;
  }

 private:
  std::string class_path(int c) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "src/main/java/org/synth/Class%03d.java", c);
    return buf;
  }

  std::string fresh_line(int indent = 4) {
    const int g = counter_++;
    std::string text(static_cast<std::size_t>(indent), ' ');
    switch (g % 5) {
      case 0:
        text += "int f" + std::to_string(g) + " = " + std::to_string(g % 97) + ";";
        break;
      case 1:
        text += "call" + std::to_string(g) + "();";
        break;
      case 2:
        text += "if (f" + std::to_string(g) + " > 0) { g" + std::to_string(g) + "(); }";
        break;
      case 3:
        text += "String s" + std::to_string(g) + " = \"v" + std::to_string(g) + "\";";
        break;
      default:
        text += "return" + std::to_string(g) + "();";
        break;
    }
    return text;
  }

  std::int64_t window_start(int r) const {
    return r == 0 ? kStart : release_ts_[static_cast<std::size_t>(r - 1)];
  }

  std::int64_t random_time(int r) {
    const std::int64_t lo = window_start(r) + 60;
    const std::int64_t hi = release_ts_[static_cast<std::size_t>(r)] - 60;
    return lo + static_cast<std::int64_t>(uniform_real(rng_) * static_cast<double>(hi - lo));
  }

  void plan_releases() {
    std::int64_t t = kStart;
    for (int r = 0; r < config_.releases; ++r) {
      const double days = config_.release_spacing_days * (0.6 + 0.8 * uniform_real(rng_));
      t += std::max<std::int64_t>(kDay, static_cast<std::int64_t>(days * kDay));
      release_ts_.push_back(t);
      char name[32];
      std::snprintf(name, sizeof name, "1.%d.0", r);
      releases_.push_back({name, r, from_unix(t)});
    }
  }

  // Classes of the initial import have birth 0; the others are added by a
  // commit inside their birth release and take part from the next one.
  void plan_births() {
    birth_.assign(static_cast<std::size_t>(config_.classes), 0);
    for (int c = 1; c < config_.classes; ++c) {
      if (uniform_real(rng_) < kInitialClassShare) continue;
      const int b = uniform_int(rng_, 1, config_.releases - 1);
      birth_[static_cast<std::size_t>(c)] = b;
      Plan p;
      p.ts = random_time(b);
      p.kind = PlanKind::kBirth;
      p.release = b;
      p.classes.push_back(c);
      plans_.push_back(std::move(p));
    }
  }

  bool alive(int c, int r) const {
    const int b = birth_[static_cast<std::size_t>(c)];
    return b == 0 || b < r;
  }

  int random_alive(int r) {
    std::vector<int> pool;
    for (int c = 0; c < config_.classes; ++c) {
      if (alive(c, r)) pool.push_back(c);
    }
    return pool[uniform_index(rng_, pool.size())];
  }

  void plan_defects() {
    const int last = config_.releases - 1;
    const double mean_dormancy = config_.dormancy_fraction * config_.releases;
    defective_.assign(static_cast<std::size_t>(config_.releases),
                      std::vector<bool>(static_cast<std::size_t>(config_.classes), false));
    for (int r = 0; r < config_.releases; ++r) {
      const int count = poisson(rng_, config_.defect_rate);
      for (int k = 0; k < count; ++k) {
        Defect d;
        d.cls = random_alive(r);
        d.intro = r;
        d.fixed = std::min(last, r + geometric(rng_, mean_dormancy));
        d.intro_ts = random_time(d.intro);
        d.fix_ts = random_time(d.fixed);
        if (d.fix_ts <= d.intro_ts) std::swap(d.fix_ts, d.intro_ts);
        if (d.fix_ts == d.intro_ts) ++d.fix_ts;
        for (int x = d.intro; x < d.fixed; ++x) {
          defective_[static_cast<std::size_t>(x)][static_cast<std::size_t>(d.cls)] = true;
        }
        defects_.push_back(d);
      }
    }
  }

  int pick_class(int r) {
    const double boost = 1 + 2 * config_.signal;
    double total = 0;
    const auto& flags = defective_[static_cast<std::size_t>(r)];
    int last = 0;
    for (int c = 0; c < config_.classes; ++c) {
      if (alive(c, r)) total += flags[static_cast<std::size_t>(c)] ? boost : 1.0;
    }
    double u = uniform_real(rng_) * total;
    for (int c = 0; c < config_.classes; ++c) {
      if (!alive(c, r)) continue;
      last = c;
      u -= flags[static_cast<std::size_t>(c)] ? boost : 1.0;
      if (u < 0) return c;
    }
    return last;
  }

  void plan_commits() {
    for (int r = 0; r < config_.releases; ++r) {
      const int n = std::max(1, poisson(rng_, config_.commits_per_release));
      for (int k = 0; k < n; ++k) {
        Plan p;
        p.ts = random_time(r);
        p.release = r;
        if (uniform_real(rng_) < 0.05) {
          p.kind = PlanKind::kReindent;
          p.classes.push_back(pick_class(r));
        } else {
          const int width = 1 + static_cast<int>(uniform_index(rng_, 3));
          std::set<int> chosen;
          for (int j = 0; j < width; ++j) chosen.insert(pick_class(r));
          p.classes.assign(chosen.begin(), chosen.end());
          p.readme = uniform_real(rng_) < 0.2;
        }
        plans_.push_back(std::move(p));
      }
    }
    for (std::size_t i = 0; i < defects_.size(); ++i) {
      const auto& d = defects_[i];
      Plan intro;
      intro.ts = d.intro_ts;
      intro.kind = PlanKind::kIntro;
      intro.release = d.intro;
      intro.defect = static_cast<int>(i);
      intro.classes.push_back(d.cls);
      plans_.push_back(intro);
      Plan fix;
      fix.ts = d.fix_ts;
      fix.kind = PlanKind::kFix;
      fix.release = d.fixed;
      fix.defect = static_cast<int>(i);
      fix.classes.push_back(d.cls);
      plans_.push_back(fix);
    }
    std::stable_sort(plans_.begin(), plans_.end(),
                     [](const Plan& a, const Plan& b) { return a.ts < b.ts; });
    std::int64_t last = kStart;
    for (auto& p : plans_) {
      p.ts = std::max(p.ts, last + 1);
      last = p.ts;
    }
  }

  // Lines that regular edits may delete: body lines without a planted bug.
  std::vector<std::size_t> deletable(const std::vector<Line>& file) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 2; i + 1 < file.size(); ++i) {
      if (file[i].bug < 0) out.push_back(i);
    }
    return out;
  }

  // Removes old lines `remove` (sorted), then inserts `insert` at positions
  // drawn inside the class body. Records the diff.
  FileChange edit(std::vector<Line>& file, const std::string& path,
                  std::vector<std::size_t> remove, std::vector<Line> insert) {
    FileChange change;
    change.path = path;
    change.kind = ChangeKind::kModified;
    std::sort(remove.begin(), remove.end());
    std::vector<Line> kept;
    std::size_t next = 0;
    for (std::size_t i = 0; i < file.size(); ++i) {
      if (next < remove.size() && remove[next] == i) {
        change.deleted_lines.push_back({static_cast<int>(i + 1), file[i].text});
        ++next;
      } else {
        kept.push_back(std::move(file[i]));
      }
    }
    std::vector<bool> added(kept.size() + insert.size(), false);
    std::vector<Line> result = std::move(kept);
    for (auto& line : insert) {
      const std::size_t pos = 2 + uniform_index(rng_, result.size() - 2);
      result.insert(result.begin() + static_cast<long>(pos), std::move(line));
      added.insert(added.begin() + static_cast<long>(pos), true);
      added.pop_back();
    }
    for (std::size_t i = 0; i < result.size(); ++i) {
      if (added[i]) change.added_lines.push_back({static_cast<int>(i + 1), result[i].text});
    }
    file = std::move(result);
    return change;
  }

  std::vector<std::size_t> pick_deletions(const std::vector<Line>& file, int count) {
    auto pool = deletable(file);
    std::vector<std::size_t> out;
    while (count-- > 0 && pool.size() > 4) {
      const std::size_t k = uniform_index(rng_, pool.size());
      out.push_back(pool[k]);
      pool.erase(pool.begin() + static_cast<long>(k));
    }
    return out;
  }

  FileChange regular_edit(int c, int r) {
    auto& file = files_[static_cast<std::size_t>(c)];
    const bool hot = defective_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    const double scale = hot ? 1 + config_.signal : 1.0;
    const int adds = static_cast<int>(std::lround(uniform_int(rng_, 1, 8) * scale));
    const int dels = static_cast<int>(std::lround(uniform_int(rng_, 0, 4) * scale));
    std::vector<Line> insert;
    for (int i = 0; i < adds; ++i) insert.push_back({fresh_line(), -1});
    return edit(file, class_path(c), pick_deletions(file, dels), std::move(insert));
  }

  FileChange reindent(int c) {
    auto& file = files_[static_cast<std::size_t>(c)];
    FileChange change;
    change.path = class_path(c);
    change.kind = ChangeKind::kModified;
    const std::size_t body = file.size() - 3;
    const std::size_t run = std::min<std::size_t>(body, 2 + uniform_index(rng_, 9));
    const std::size_t first = 2 + uniform_index(rng_, body - run + 1);
    for (std::size_t i = first; i < first + run; ++i) {
      change.deleted_lines.push_back({static_cast<int>(i + 1), file[i].text});
      auto& text = file[i].text;
      if (text.rfind("        ", 0) == 0) {
        text.erase(0, 4);
      } else {
        text.insert(0, "    ");
      }
    }
    for (std::size_t i = first; i < first + run; ++i) {
      change.added_lines.push_back({static_cast<int>(i + 1), file[i].text});
    }
    return change;
  }

  std::string commit_id(std::size_t index) const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%016llx%016llx%08zx",
                  static_cast<unsigned long long>(derive_seed(config_.seed, index)),
                  static_cast<unsigned long long>(derive_seed(~config_.seed, index)),
                  index);
    return buf;
  }

  std::string ticket_key(int defect) const {
    return config_.name + "-" + std::to_string(defect + 1);
  }

  void push_commit(std::int64_t ts, std::string message, std::vector<FileChange> changes) {
    CommitRecord commit;
    commit.id = commit_id(commits_.size());
    commit.timestamp = from_unix(ts);
    commit.author = "dev" + std::to_string(uniform_index(rng_, 8));
    commit.message = std::move(message);
    if (!commits_.empty()) commit.parents.push_back(commits_.back().id);
    commit.changes = std::move(changes);
    commits_.push_back(std::move(commit));
  }

  FileChange create(int c) {
    auto& file = files_[static_cast<std::size_t>(c)];
    file.push_back({"package org.synth;", -1});
    char header[64];
    std::snprintf(header, sizeof header, "public class Class%03d {", c);
    file.push_back({header, -1});
    const int body = uniform_int(rng_, 20, 150);
    for (int i = 0; i < body; ++i) file.push_back({fresh_line(), -1});
    file.push_back({"}", -1});
    FileChange change;
    change.path = class_path(c);
    change.kind = ChangeKind::kAdded;
    for (std::size_t i = 0; i < file.size(); ++i) {
      change.added_lines.push_back({static_cast<int>(i + 1), file[i].text});
    }
    return change;
  }

  void materialize() {
    std::vector<FileChange> initial;
    files_.resize(static_cast<std::size_t>(config_.classes));
    for (int c = 0; c < config_.classes; ++c) {
      if (birth_[static_cast<std::size_t>(c)] == 0) initial.push_back(create(c));
    }
    FileChange readme;
    readme.path = kReadme;
    readme.kind = ChangeKind::kAdded;
    readme.added_lines.push_back({1, "# " + config_.name});
    readme_lines_ = 1;
    initial.push_back(std::move(readme));
    push_commit(kStart, "Initial import", std::move(initial));

    for (const auto& p : plans_) {
      std::vector<FileChange> changes;
      std::string message;
      switch (p.kind) {
        case PlanKind::kRegular:
          for (const int c : p.classes) changes.push_back(regular_edit(c, p.release));
          message = "Update " + std::to_string(p.classes.size()) + " classes";
          break;
        case PlanKind::kReindent:
          changes.push_back(reindent(p.classes[0]));
          message = "Reformat code";
          break;
        case PlanKind::kBirth:
          changes.push_back(create(p.classes[0]));
          message = "Add Class" + std::to_string(p.classes[0]);
          break;
        case PlanKind::kIntro: {
          const int c = p.classes[0];
          auto& file = files_[static_cast<std::size_t>(c)];
          std::vector<Line> insert;
          insert.push_back({"    risky" + std::to_string(p.defect) + "(state);", p.defect});
          const int extra = static_cast<int>(std::lround(uniform_int(rng_, 0, 4) * (1 + config_.signal)));
          for (int i = 0; i < extra; ++i) insert.push_back({fresh_line(), -1});
          changes.push_back(edit(file, class_path(c), {}, std::move(insert)));
          message = "Add feature to Class" + std::to_string(c);
          break;
        }
        case PlanKind::kFix: {
          const int c = p.classes[0];
          auto& file = files_[static_cast<std::size_t>(c)];
          std::vector<std::size_t> remove;
          for (std::size_t i = 0; i < file.size(); ++i) {
            if (file[i].bug == p.defect) remove.push_back(i);
          }
          std::vector<Line> insert;
          insert.push_back({"    safe" + std::to_string(p.defect) + "(state);", -1});
          changes.push_back(edit(file, class_path(c), std::move(remove), std::move(insert)));
          message = "Fix " + ticket_key(p.defect) + ": wrong state handling";
          break;
        }
      }
      if (p.readme) {
        FileChange change;
        change.path = kReadme;
        change.kind = ChangeKind::kModified;
        change.added_lines.push_back({readme_lines_ + 1, "note " + std::to_string(counter_++)});
        ++readme_lines_;
        changes.push_back(std::move(change));
      }
      push_commit(p.ts, std::move(message), std::move(changes));
    }
  }

  void make_tickets(SynthProject& out) {
    for (std::size_t i = 0; i < defects_.size(); ++i) {
      const auto& d = defects_[i];
      Ticket t;
      t.key = ticket_key(static_cast<int>(i));
      t.kind = "Bug";
      t.opened = from_unix(d.intro_ts + static_cast<std::int64_t>(
                                            uniform_real(rng_) *
                                            static_cast<double>(d.fix_ts - d.intro_ts)));
      t.resolved = from_unix(d.fix_ts + 3600);
      t.status = "Resolved";
      if (uniform_real(rng_) < config_.av_availability) {
        for (int r = d.intro; r < std::max(d.fixed, d.intro + 1); ++r) {
          t.affected_versions.push_back(releases_[static_cast<std::size_t>(r)].name);
        }
      }
      t.fixed_versions.push_back(releases_[static_cast<std::size_t>(d.fixed)].name);
      out.tickets.push_back(std::move(t));
      out.ground_truth.push_back({ticket_key(static_cast<int>(i)), class_path(d.cls),
                                  d.intro, d.fixed});
    }
    std::sort(out.tickets.begin(), out.tickets.end(), [](const Ticket& a, const Ticket& b) {
      return ticket_key_less(a.key, b.key);
    });
  }

  SynthConfig config_;
  Rng rng_;
  int counter_ = 0;
  int readme_lines_ = 0;
  std::vector<std::int64_t> release_ts_;
  std::vector<Release> releases_;
  std::vector<int> birth_;
  std::vector<Defect> defects_;
  std::vector<std::vector<bool>> defective_;
  std::vector<Plan> plans_;
  std::vector<std::vector<Line>> files_;
  std::vector<CommitRecord> commits_;
};

}  // namespace

SynthProject generate(const SynthConfig& config) {
  config.validate();
  return Generator(config).run();
}

void write_ground_truth_csv(const std::vector<GroundTruthDefect>& defects,
                            const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  write_csv_row(out, {"ticket_key", "class_path", "intro_ordinal", "fixed_ordinal"});
  for (const auto& d : defects) {
    write_csv_row(out, {d.ticket_key, d.class_path, std::to_string(d.intro),
                        std::to_string(d.fixed)});
  }
}

void write_synth_project(const SynthProject& project, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_history_jsonl(project.history, dir / "history.jsonl");
  write_issues_json(project.tickets, dir / "issues.json");
  write_ground_truth_csv(project.ground_truth, dir / "ground_truth.csv");
}

}  // namespace snoring
