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
#include "snoring/cosmetic.h"

#include <algorithm>
#include <cctype>

namespace snoring {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string strip_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    if (!is_space(c)) out += c;
  }
  return out;
}

std::vector<ScannedLine> scan_lines(const std::vector<std::string>& lines) {
  std::vector<ScannedLine> out;
  out.reserve(lines.size());
  bool in_block = false;
  bool block_is_doc = false;
  for (const auto& line : lines) {
    ScannedLine s;
    bool has_code = false, has_comment = false, has_doc = false;
    const bool started_in_block = in_block;
    const std::size_t n = line.size();
    std::size_t i = 0;
    while (i < n) {
      const char c = line[i];
      if (in_block) {
        if (c == '*' && i + 1 < n && line[i + 1] == '/') {
          (block_is_doc ? has_doc : has_comment) = true;
          in_block = false;
          i += 2;
        } else {
          if (!is_space(c)) (block_is_doc ? has_doc : has_comment) = true;
          ++i;
        }
        continue;
      }
      if (c == '/' && i + 1 < n && line[i + 1] == '/') {
        has_comment = true;
        break;
      }
      if (c == '/' && i + 1 < n && line[i + 1] == '*') {
        in_block = true;
        block_is_doc = i + 2 < n && line[i + 2] == '*' &&
                       !(i + 3 < n && line[i + 3] == '/');
        (block_is_doc ? has_doc : has_comment) = true;
        i += block_is_doc ? 3 : 2;
        continue;
      }
      if (c == '"' || c == '\'') {
        has_code = true;
        s.code += c;
        ++i;
        while (i < n && line[i] != c) {
          if (line[i] == '\\' && i + 1 < n) s.code += line[i++];
          s.code += line[i++];
        }
        if (i < n) s.code += line[i++];
        continue;
      }
      if (!is_space(c)) {
        has_code = true;
        s.code += c;
      }
      ++i;
    }
    const auto first = std::find_if_not(line.begin(), line.end(), is_space);
    if (has_code && !started_in_block && first != line.end() && *first == '*') {
      // Continuation of a doc comment the scanner did not see open.
      has_code = false;
      has_doc = true;
      s.code.clear();
    }
    if (has_code) {
      s.cls = LineClass::kCode;
    } else if (has_doc && !has_comment) {
      s.cls = LineClass::kDoc;
    } else if (has_comment || has_doc) {
      s.cls = LineClass::kComment;
    } else {
      s.cls = LineClass::kBlank;
    }
    out.push_back(std::move(s));
  }
  return out;
}

CosmeticFilter CosmeticFilter::standard() {
  return CosmeticFilter({CosmeticRule::kWhitespace, CosmeticRule::kComment,
                         CosmeticRule::kDocumentation, CosmeticRule::kIndentation});
}

bool CosmeticFilter::has(CosmeticRule rule) const {
  return std::find(rules_.begin(), rules_.end(), rule) != rules_.end();
}

bool CosmeticFilter::is_cosmetic(const LineContext& line) const {
  for (const auto rule : rules_) {
    switch (rule) {
      case CosmeticRule::kWhitespace:
        if (line.cls == LineClass::kBlank) return true;
        break;
      case CosmeticRule::kComment:
        if (line.cls == LineClass::kComment) return true;
        break;
      case CosmeticRule::kDocumentation:
        if (line.cls == LineClass::kDoc) return true;
        break;
      case CosmeticRule::kIndentation:
        if (line.rewritten) return true;
        break;
    }
  }
  return false;
}

std::string CosmeticFilter::signature(std::string_view text,
                                      const ScannedLine& scanned) const {
  if (has(CosmeticRule::kComment)) return scanned.code;
  return strip_whitespace(text);
}

}  // namespace snoring
