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
#include "snoring/time.h"

#include <cctype>
#include <cstdio>

#include "snoring/error.h"

namespace snoring {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  void skip() { ++pos_; }

  int digits(int count) {
    int value = 0;
    for (int i = 0; i < count; ++i) {
      if (done() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        fail();
      }
      value = value * 10 + (text_[pos_++] - '0');
    }
    return value;
  }

  void expect(char c) {
    if (peek() != c) fail();
    ++pos_;
  }

  [[noreturn]] void fail() const {
    throw InputError("malformed timestamp '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Instant parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  Cursor in(text);
  const int y = in.digits(4);
  in.expect('-');
  const int mo = in.digits(2);
  in.expect('-');
  const int d = in.digits(2);
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) in.fail();
  long long secs = 0;
  if (!in.done()) {
    if (in.peek() != 'T' && in.peek() != ' ') in.fail();
    in.skip();
    const int hh = in.digits(2);
    in.expect(':');
    const int mm = in.digits(2);
    int ss = 0;
    if (in.peek() == ':') {
      in.skip();
      ss = in.digits(2);
    }
    if (hh > 23 || mm > 59 || ss > 60) in.fail();
    secs = hh * 3600LL + mm * 60LL + ss;
    if (in.peek() == '.' || in.peek() == ',') {
      in.skip();
      while (std::isdigit(static_cast<unsigned char>(in.peek()))) in.skip();
    }
    if (in.peek() == ' ') in.skip();
    if (in.peek() == 'Z') {
      in.skip();
    } else if (in.peek() == '+' || in.peek() == '-') {
      const int sign = in.peek() == '+' ? 1 : -1;
      in.skip();
      const int oh = in.digits(2);
      if (in.peek() == ':') in.skip();
      const int om = in.digits(2);
      secs -= sign * (oh * 3600LL + om * 60LL);
    }
    if (!in.done()) in.fail();
  }
  return time_point_cast<seconds>(sys_days{ymd}) + seconds{secs};
}

std::string format_iso8601(Instant t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss<seconds> tod{t - day_point};
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<long long>(tod.hours().count()),
                static_cast<long long>(tod.minutes().count()),
                static_cast<long long>(tod.seconds().count()));
  return buf;
}

}  // namespace snoring
