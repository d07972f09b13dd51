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
// Which changed source lines cannot introduce a defect: whitespace,
// comments, documentation and pure re-indentation.
#ifndef SNORING_COSMETIC_H_
#define SNORING_COSMETIC_H_

#include <string>
#include <string_view>
#include <vector>

namespace snoring {

enum class LineClass { kBlank, kCode, kComment, kDoc };

struct ScannedLine {
  LineClass cls = LineClass::kBlank;
  // Non-comment characters of the line with all whitespace removed.
  std::string code;
};

// Line scanner for Java-like sources. Tracks block comments and string
// literals across lines; no parsing beyond that. A line whose trimmed text
// starts with '*' counts as documentation.
std::vector<ScannedLine> scan_lines(const std::vector<std::string>& lines);

std::string strip_whitespace(std::string_view text);

enum class CosmeticRule {
  kWhitespace,     // blank after removing whitespace
  kComment,        // only `//` or `/* */` comment text
  kDocumentation,  // only `/** */` text, or a line starting with '*'
  kIndentation,    // rewritten line whose code equals a removed one
};

struct LineContext {
  LineClass cls = LineClass::kBlank;
  // The same change holds a counterpart line with identical code.
  bool rewritten = false;
};

class CosmeticFilter {
 public:
  CosmeticFilter() = default;
  explicit CosmeticFilter(std::vector<CosmeticRule> rules)
      : rules_(std::move(rules)) {}

  // Every rule, in declaration order.
  static CosmeticFilter standard();

  bool has(CosmeticRule rule) const;
  bool is_cosmetic(const LineContext& line) const;
  const std::vector<CosmeticRule>& rules() const { return rules_; }

  // Key under which two lines count as the same code. Ignores whitespace,
  // and comments as well when the comment rule is active.
  std::string signature(std::string_view text, const ScannedLine& scanned) const;

 private:
  std::vector<CosmeticRule> rules_;
};

}  // namespace snoring

#endif  // SNORING_COSMETIC_H_
