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
// Introducing release of each defect: the oldest affected version when the
// ticket has one, otherwise the origin of the lines its fix removed, traced
// with a cosmetic-aware blame.
#ifndef SNORING_SZZ_H_
#define SNORING_SZZ_H_

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "snoring/cosmetic.h"
#include "snoring/history.h"
#include "snoring/tickets.h"

namespace snoring {

struct DefectLine {
  std::string path;
  int line = 0;
  std::string text;

  friend auto operator<=>(const DefectLine&, const DefectLine&) = default;
};

// Pre-fix content of the files a commit touches, keyed by source path.
using PreImages = std::map<std::string, std::vector<std::string>>;

// Lines the fix removed or rewrote in class files, minus cosmetic ones.
// `line` numbers refer to the pre-fix file. Without `pre_images` comment
// regions are judged from the removed lines alone.
std::set<DefectLine> deleted_defect_lines(const CommitRecord& fix,
                                          const CosmeticFilter& filter,
                                          const PreImages* pre_images = nullptr);

// Line-level blame over a whole history. Origins skip commits whose change
// to a line was cosmetic (same code modulo whitespace, and comments when
// the comment rule is on). Built with one replay; pre-images are kept only
// for `targets`.
class LineTracer {
 public:
  struct BlamedLine {
    std::string text;
    std::size_t origin = 0;  // commit index
  };

  LineTracer(const ProjectHistory& history, CosmeticFilter filter,
             const std::set<std::size_t>& targets);

  // Blame of `path` just before commit `commit_index`; nullptr when the
  // file did not exist or the commit was not a target.
  const std::vector<BlamedLine>* pre_image(std::size_t commit_index,
                                           const std::string& path) const;

  PreImages pre_image_texts(std::size_t commit_index) const;

  // Commit index that last touched `line` (1-based) of `path` before
  // `commit_index`. Throws InputError when the line does not exist.
  std::size_t origin(std::size_t commit_index, const std::string& path,
                     int line) const;

 private:
  CosmeticFilter filter_;
  std::map<std::size_t, std::map<std::string, std::vector<BlamedLine>>> images_;
};

// Id of the most recent commit before `before` that last modified `line`
// of `path`, following renames and skipping cosmetic rewrites.
std::string trace_last_touch(const std::string& path, int line,
                             const std::string& before,
                             const ProjectHistory& history,
                             const CosmeticFilter& filter = CosmeticFilter::standard());

enum class IntroductionSource { kAffectedVersion, kSzz, kUnknown };

std::string_view to_string(IntroductionSource source);
IntroductionSource introduction_source_from_string(std::string_view text);

struct IntroductionEstimate {
  std::string ticket_key;
  std::optional<int> release;  // absent iff source == kUnknown
  IntroductionSource source = IntroductionSource::kUnknown;

  friend bool operator==(const IntroductionEstimate&,
                         const IntroductionEstimate&) = default;
};

// A resolved, linked defect ticket with everything labeling needs.
struct DefectRecord {
  std::string ticket_key;
  IntroductionEstimate introduction;
  // Release containing the latest linked commit; post-last marker allowed.
  int fixed = 0;
  Instant fixed_at;
  std::set<std::string> fix_commits;
  // Classes the fix modified (files it created excluded).
  std::set<std::string> touched_classes;

  friend bool operator==(const DefectRecord&, const DefectRecord&) = default;
};

// Fixed release of a ticket: the release interval holding its latest linked
// commit.
int fixed_release(const std::set<std::string>& fix_commits,
                  const ProjectHistory& history);

IntroductionEstimate resolve_introduction(
    const Ticket& ticket, const TicketLinks& links, const ProjectHistory& history,
    const CosmeticFilter& filter = CosmeticFilter::standard(),
    Warnings* warnings = nullptr);

// Resolves every resolved, linked defect ticket with one blame replay.
// Unresolved and unlinked tickets are skipped with a warning. Records with
// an unknown source are kept (they still count as fixes) but carry no
// introduction release.
std::vector<DefectRecord> resolve_defects(
    const ProjectHistory& history, const std::vector<Ticket>& tickets,
    const CosmeticFilter& filter = CosmeticFilter::standard(),
    Warnings* warnings = nullptr);

// introductions.csv: ticket_key,introducing_release,fixed_release,source
void write_introductions_csv(const std::vector<DefectRecord>& defects,
                             const std::filesystem::path& file);

}  // namespace snoring

#endif  // SNORING_SZZ_H_
