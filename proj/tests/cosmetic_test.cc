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
#include <gtest/gtest.h>

#include "snoring/cosmetic.h"

namespace snoring {
namespace {

TEST(ScanLinesTest, ClassifiesLineKinds) {
  const auto scanned = scan_lines({
      "",
      "  int x = 1; // trailing",
      "  // only a comment",
      "  /** Javadoc",
      "   * more doc",
      "   */",
      "  /* block",
      "  still block",
      "  */ int y;",
      "  String s = \"// not a comment\";",
  });
  ASSERT_EQ(scanned.size(), 10u);
  EXPECT_EQ(scanned[0].cls, LineClass::kBlank);
  EXPECT_EQ(scanned[1].cls, LineClass::kCode);
  EXPECT_EQ(scanned[1].code, "intx=1;");
  EXPECT_EQ(scanned[2].cls, LineClass::kComment);
  EXPECT_EQ(scanned[3].cls, LineClass::kDoc);
  EXPECT_EQ(scanned[4].cls, LineClass::kDoc);
  EXPECT_EQ(scanned[5].cls, LineClass::kDoc);
  EXPECT_EQ(scanned[6].cls, LineClass::kComment);
  EXPECT_EQ(scanned[7].cls, LineClass::kComment);
  EXPECT_EQ(scanned[8].cls, LineClass::kCode);
  EXPECT_EQ(scanned[8].code, "inty;");
  EXPECT_EQ(scanned[9].cls, LineClass::kCode);
  EXPECT_EQ(scanned[9].code, "Strings=\"// not a comment\";");
}

TEST(ScanLinesTest, StripWhitespace) {
  EXPECT_EQ(strip_whitespace(" a\tb \r\n c "), "abc");
}

TEST(CosmeticFilterTest, StandardHasEveryRule) {
  const auto f = CosmeticFilter::standard();
  EXPECT_TRUE(f.has(CosmeticRule::kWhitespace));
  EXPECT_TRUE(f.has(CosmeticRule::kComment));
  EXPECT_TRUE(f.has(CosmeticRule::kDocumentation));
  EXPECT_TRUE(f.has(CosmeticRule::kIndentation));
}

TEST(CosmeticFilterTest, RulesGateEachLineKind) {
  const auto all = CosmeticFilter::standard();
  EXPECT_TRUE(all.is_cosmetic({LineClass::kBlank, false}));
  EXPECT_TRUE(all.is_cosmetic({LineClass::kComment, false}));
  EXPECT_TRUE(all.is_cosmetic({LineClass::kDoc, false}));
  EXPECT_TRUE(all.is_cosmetic({LineClass::kCode, true}));
  EXPECT_FALSE(all.is_cosmetic({LineClass::kCode, false}));

  const CosmeticFilter none;
  EXPECT_FALSE(none.is_cosmetic({LineClass::kBlank, false}));
  EXPECT_FALSE(none.is_cosmetic({LineClass::kComment, false}));
  EXPECT_FALSE(none.is_cosmetic({LineClass::kCode, true}));

  const CosmeticFilter docs_only({CosmeticRule::kDocumentation});
  EXPECT_TRUE(docs_only.is_cosmetic({LineClass::kDoc, false}));
  EXPECT_FALSE(docs_only.is_cosmetic({LineClass::kComment, false}));
}

TEST(CosmeticFilterTest, SignatureIgnoresCommentsOnlyWithCommentRule) {
  const std::string a = "int x = 1; // one";
  const std::string b = "int  x=1; // two";
  const auto sa = scan_lines({a})[0];
  const auto sb = scan_lines({b})[0];
  const auto all = CosmeticFilter::standard();
  EXPECT_EQ(all.signature(a, sa), all.signature(b, sb));
  const CosmeticFilter ws({CosmeticRule::kWhitespace});
  EXPECT_NE(ws.signature(a, sa), ws.signature(b, sb));
  EXPECT_EQ(ws.signature("int x;", scan_lines({"int x;"})[0]),
            ws.signature("  int   x;", scan_lines({"  int   x;"})[0]));
}

}  // namespace
}  // namespace snoring
