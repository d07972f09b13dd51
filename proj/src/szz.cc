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
#include "snoring/szz.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <unordered_map>

#include "snoring/csv.h"

namespace snoring {

namespace {

std::vector<std::string> texts_of(const std::vector<DiffLine>& lines) {
  std::vector<std::string> out;
  out.reserve(lines.size());
  for (const auto& l : lines) out.push_back(l.text);
  return out;
}

void warn(Warnings* warnings, std::string message) {
  if (warnings) warnings->push_back(std::move(message));
}

// Multiset of keys that can be consumed one at a time.
class KeyPool {
 public:
  void add(const std::string& key) {
    if (!key.empty()) ++counts_[key];
  }
  bool take(const std::string& key) {
    if (key.empty()) return false;
    const auto it = counts_.find(key);
    if (it == counts_.end() || it->second == 0) return false;
    --it->second;
    return true;
  }

 private:
  std::unordered_map<std::string, int> counts_;
};

}  // namespace

std::set<DefectLine> deleted_defect_lines(const CommitRecord& fix,
                                          const CosmeticFilter& filter,
                                          const PreImages* pre_images) {
  std::set<DefectLine> out;
  const bool comment_aware = filter.has(CosmeticRule::kComment);
  for (const auto& change : fix.changes) {
    if (change.kind == ChangeKind::kAdded || change.deleted_lines.empty()) continue;
    const std::string& source = change.source_path();
    if (!is_class_path(source)) continue;

    std::vector<ScannedLine> deleted_scan;
    const std::vector<std::string>* image = nullptr;
    if (pre_images) {
      const auto it = pre_images->find(source);
      if (it != pre_images->end()) image = &it->second;
    }
    if (image) {
      const auto full = scan_lines(*image);
      for (const auto& d : change.deleted_lines) {
        const auto i = static_cast<std::size_t>(d.number - 1);
        deleted_scan.push_back(i < full.size() ? full[i] : ScannedLine{});
      }
    } else {
      deleted_scan = scan_lines(texts_of(change.deleted_lines));
    }

    const auto added_scan = scan_lines(texts_of(change.added_lines));
    KeyPool stripped_pool, code_pool;
    for (std::size_t i = 0; i < change.added_lines.size(); ++i) {
      stripped_pool.add(strip_whitespace(change.added_lines[i].text));
      if (comment_aware) code_pool.add(added_scan[i].code);
    }

    for (std::size_t i = 0; i < change.deleted_lines.size(); ++i) {
      const auto& d = change.deleted_lines[i];
      LineContext ctx{deleted_scan[i].cls, false};
      ctx.rewritten = stripped_pool.take(strip_whitespace(d.text)) ||
                      (comment_aware && code_pool.take(deleted_scan[i].code));
      if (!filter.is_cosmetic(ctx)) out.insert({source, d.number, d.text});
    }
  }
  return out;
}

LineTracer::LineTracer(const ProjectHistory& history, CosmeticFilter filter,
                       const std::set<std::size_t>& targets)
    : filter_(std::move(filter)) {
  const bool inherit = filter_.has(CosmeticRule::kIndentation);
  std::unordered_map<std::string, std::vector<BlamedLine>> files;
  const auto& commits = history.commits();
  for (std::size_t c = 0; c < commits.size(); ++c) {
    const auto& changes = commits[c].changes;
    const bool keep = targets.count(c) > 0;
    if (keep) images_[c];

    std::vector<std::vector<BlamedLine>> olds(changes.size());
    for (std::size_t j = 0; j < changes.size(); ++j) {
      if (changes[j].kind == ChangeKind::kAdded) continue;
      const auto it = files.find(changes[j].source_path());
      if (it == files.end()) continue;
      if (keep) images_[c][it->first] = it->second;
      olds[j] = std::move(it->second);
      files.erase(it);
    }

    for (std::size_t j = 0; j < changes.size(); ++j) {
      const auto& change = changes[j];
      auto& lines = olds[j];
      std::unordered_map<std::string, std::deque<std::size_t>> pool;
      if (inherit && !change.deleted_lines.empty()) {
        std::vector<std::string> texts;
        texts.reserve(lines.size());
        for (const auto& l : lines) texts.push_back(l.text);
        const auto scanned = scan_lines(texts);
        for (const auto& d : change.deleted_lines) {
          const auto i = static_cast<std::size_t>(d.number - 1);
          if (i >= lines.size()) break;
          auto key = filter_.signature(lines[i].text, scanned[i]);
          if (!key.empty()) pool[std::move(key)].push_back(lines[i].origin);
        }
      }
      apply_change(
          lines, change,
          [c](const DiffLine& d) { return BlamedLine{d.text, c}; },
          [](int, const BlamedLine&) {});
      if (!pool.empty() && !change.added_lines.empty()) {
        std::vector<std::string> texts;
        texts.reserve(lines.size());
        for (const auto& l : lines) texts.push_back(l.text);
        const auto scanned = scan_lines(texts);
        for (const auto& a : change.added_lines) {
          const auto i = static_cast<std::size_t>(a.number - 1);
          const auto key = filter_.signature(lines[i].text, scanned[i]);
          const auto it = pool.find(key);
          if (it == pool.end() || it->second.empty()) continue;
          lines[i].origin = it->second.front();
          it->second.pop_front();
        }
      }
      if (change.kind != ChangeKind::kDeleted) files[change.path] = std::move(lines);
    }
  }
}

const std::vector<LineTracer::BlamedLine>* LineTracer::pre_image(
    std::size_t commit_index, const std::string& path) const {
  const auto it = images_.find(commit_index);
  if (it == images_.end()) return nullptr;
  const auto file = it->second.find(path);
  return file == it->second.end() ? nullptr : &file->second;
}

PreImages LineTracer::pre_image_texts(std::size_t commit_index) const {
  PreImages out;
  const auto it = images_.find(commit_index);
  if (it == images_.end()) return out;
  for (const auto& [path, lines] : it->second) {
    auto& texts = out[path];
    for (const auto& l : lines) texts.push_back(l.text);
  }
  return out;
}

std::size_t LineTracer::origin(std::size_t commit_index, const std::string& path,
                               int line) const {
  const auto* image = pre_image(commit_index, path);
  if (!image) {
    throw InputError("no pre-image of " + path + " before commit #" +
                     std::to_string(commit_index));
  }
  if (line < 1 || static_cast<std::size_t>(line) > image->size()) {
    throw InputError(path + " has no line " + std::to_string(line));
  }
  return (*image)[static_cast<std::size_t>(line - 1)].origin;
}

std::string trace_last_touch(const std::string& path, int line,
                             const std::string& before,
                             const ProjectHistory& history,
                             const CosmeticFilter& filter) {
  const auto index = history.commit_index(before);
  if (!index) throw InputError("unknown commit " + before);
  const LineTracer tracer(history, filter, {*index});
  return history.commits()[tracer.origin(*index, path, line)].id;
}

std::string_view to_string(IntroductionSource source) {
  switch (source) {
    case IntroductionSource::kAffectedVersion:
      return "affected_version";
    case IntroductionSource::kSzz:
      return "szz";
    case IntroductionSource::kUnknown:
      return "unknown";
  }
  return "unknown";
}

IntroductionSource introduction_source_from_string(std::string_view text) {
  if (text == "affected_version") return IntroductionSource::kAffectedVersion;
  if (text == "szz") return IntroductionSource::kSzz;
  if (text == "unknown") return IntroductionSource::kUnknown;
  throw InputError("unknown introduction source '" + std::string(text) + "'");
}

int fixed_release(const std::set<std::string>& fix_commits,
                  const ProjectHistory& history) {
  std::optional<std::size_t> latest;
  for (const auto& id : fix_commits) {
    const auto index = history.commit_index(id);
    if (!index) throw InputError("unknown commit " + id);
    if (!latest || *index > *latest) latest = index;
  }
  if (!latest) throw InputError("ticket has no fix commits");
  return history.release_ordinal(*latest);
}

namespace {

std::set<std::size_t> indices_of(const std::set<std::string>& ids,
                                 const ProjectHistory& history) {
  std::set<std::size_t> out;
  for (const auto& id : ids) {
    const auto index = history.commit_index(id);
    if (!index) throw InputError("unknown commit " + id);
    out.insert(*index);
  }
  return out;
}

std::optional<IntroductionEstimate> from_affected_versions(
    const Ticket& ticket, int fixed, const ProjectHistory& history,
    Warnings* warnings) {
  const auto avs =
      resolve_versions(ticket.affected_versions, history.releases(), warnings);
  if (avs.empty()) return std::nullopt;
  int intro = avs.front();
  if (intro > fixed) {
    const int clamped = std::max(fixed - 1, 0);
    warn(warnings, ticket.key + ": affected version " + std::to_string(intro) +
                       " after fixed release " + std::to_string(fixed) +
                       ", clamped to " + std::to_string(clamped));
    intro = clamped;
  }
  return IntroductionEstimate{ticket.key, intro, IntroductionSource::kAffectedVersion};
}

IntroductionEstimate from_szz(const Ticket& ticket,
                              const std::set<std::size_t>& fixes,
                              const ProjectHistory& history,
                              const LineTracer& tracer,
                              const CosmeticFilter& filter, Warnings* warnings) {
  std::optional<int> earliest;
  for (const auto c : fixes) {
    const auto images = tracer.pre_image_texts(c);
    for (const auto& line :
         deleted_defect_lines(history.commits()[c], filter, &images)) {
      const int r = history.release_ordinal(tracer.origin(c, line.path, line.line));
      if (!earliest || r < *earliest) earliest = r;
    }
  }
  if (!earliest) {
    warn(warnings, ticket.key +
                       ": no affected version and no traceable lines, "
                       "excluded from labeling");
    return {ticket.key, std::nullopt, IntroductionSource::kUnknown};
  }
  return {ticket.key, earliest, IntroductionSource::kSzz};
}

}  // namespace

IntroductionEstimate resolve_introduction(const Ticket& ticket,
                                          const TicketLinks& links,
                                          const ProjectHistory& history,
                                          const CosmeticFilter& filter,
                                          Warnings* warnings) {
  const auto it = links.find(ticket.key);
  if (it == links.end() || it->second.empty()) {
    throw InputError(ticket.key + " has no linked commits");
  }
  const int fixed = fixed_release(it->second, history);
  if (auto av = from_affected_versions(ticket, fixed, history, warnings)) return *av;
  const auto fixes = indices_of(it->second, history);
  const LineTracer tracer(history, filter, fixes);
  return from_szz(ticket, fixes, history, tracer, filter, warnings);
}

std::vector<DefectRecord> resolve_defects(const ProjectHistory& history,
                                          const std::vector<Ticket>& tickets,
                                          const CosmeticFilter& filter,
                                          Warnings* warnings) {
  std::vector<std::string> keys;
  for (const auto& t : tickets) keys.push_back(t.key);
  const auto links = link_tickets(history, keys);

  struct Pending {
    const Ticket* ticket;
    DefectRecord record;
    std::set<std::size_t> fixes;
  };
  std::vector<Pending> pending;
  std::set<std::size_t> targets;
  for (const auto& t : tickets) {
    if (!is_defect_kind(t.kind)) continue;
    if (!t.resolved) {
      warn(warnings, t.key + ": unresolved, skipped");
      continue;
    }
    const auto& ids = links.at(t.key);
    if (ids.empty()) {
      warn(warnings, t.key + ": no linked commit, skipped");
      continue;
    }
    Pending p{&t, {}, indices_of(ids, history)};
    p.record.ticket_key = t.key;
    p.record.fix_commits = ids;
    p.record.fixed = history.release_ordinal(*p.fixes.rbegin());
    for (const auto c : p.fixes) {
      const auto& commit = history.commits()[c];
      p.record.fixed_at = std::max(p.record.fixed_at, commit.timestamp);
      for (std::size_t j = 0; j < commit.changes.size(); ++j) {
        if (commit.changes[j].kind == ChangeKind::kAdded) continue;
        const auto& key = history.class_key(c, j);
        if (!key.empty()) p.record.touched_classes.insert(key);
      }
    }
    if (auto av = from_affected_versions(t, p.record.fixed, history, warnings)) {
      p.record.introduction = *av;
    } else {
      targets.insert(p.fixes.begin(), p.fixes.end());
    }
    pending.push_back(std::move(p));
  }

  std::optional<LineTracer> tracer;
  if (!targets.empty()) tracer.emplace(history, filter, targets);
  std::vector<DefectRecord> out;
  out.reserve(pending.size());
  for (auto& p : pending) {
    if (p.record.introduction.ticket_key.empty()) {
      p.record.introduction =
          from_szz(*p.ticket, p.fixes, history, *tracer, filter, warnings);
    }
    out.push_back(std::move(p.record));
  }
  return out;
}

void write_introductions_csv(const std::vector<DefectRecord>& defects,
                             const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  write_csv_row(out, {"ticket_key", "introducing_release", "fixed_release", "source"});
  for (const auto& d : defects) {
    const auto& intro = d.introduction;
    write_csv_row(out, {d.ticket_key,
                        intro.release ? std::to_string(*intro.release) : "",
                        std::to_string(d.fixed), std::string(to_string(intro.source))});
  }
}

}  // namespace snoring
