// Copyright 2026 The rainbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rainbound/series_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rainbound/errors.hpp"
#include "rainbound/text.hpp"

namespace rainbound {

namespace {

bool digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

constexpr std::int64_t cadence_s = 60;

}  // namespace

std::optional<std::int64_t> parse_iso8601(std::string_view s) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (!digits(s, 0, 4, y) || s.size() < 16 || s[4] != '-' || !digits(s, 5, 2, mo) || s[7] != '-' ||
      !digits(s, 8, 2, d) || (s[10] != 'T' && s[10] != ' ') || !digits(s, 11, 2, h) || s[13] != ':' ||
      !digits(s, 14, 2, mi))
    return std::nullopt;
  std::size_t pos = 16;
  if (pos < s.size() && s[pos] == ':') {
    if (!digits(s, pos + 1, 2, sec)) return std::nullopt;
    pos += 3;
  }
  int offset_min = 0;
  if (pos < s.size()) {
    if (s[pos] == 'Z' && pos + 1 == s.size()) {
      pos += 1;
    } else if ((s[pos] == '+' || s[pos] == '-') && s.size() == pos + 6 && s[pos + 3] == ':') {
      int oh = 0, om = 0;
      if (!digits(s, pos + 1, 2, oh) || !digits(s, pos + 4, 2, om) || oh > 23 || om > 59) return std::nullopt;
      offset_min = (s[pos] == '+' ? 1 : -1) * (oh * 60 + om);
      pos = s.size();
    } else {
      return std::nullopt;
    }
  }
  if (pos != s.size()) return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) return std::nullopt;
  const auto days = sys_days{ymd}.time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + sec - offset_min * 60;
}

std::string format_iso8601(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  std::int64_t days = epoch_seconds / 86400;
  std::int64_t rem = epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
                static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
  return buf;
}

AttenuationSeries parse_series(std::string_view text) {
  AttenuationSeries out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool seen_content = false;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string line = text::trim(text::strip_comment(raw));
    if (line.empty()) continue;
    const auto fields = text::split(line, ',');
    const bool first = !seen_content;
    seen_content = true;
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected 2 fields (timestamp,attenuation_db), got " + std::to_string(fields.size()));
    }
    const std::string ts = text::trim(fields[0]);
    const auto value = text::parse_double(fields[1]);
    const auto epoch = parse_iso8601(ts);
    if (first && !epoch && !value) continue;  // header row
    if (!epoch) throw ParseError(line_no, "malformed timestamp '" + ts + "'");
    if (!value || !std::isfinite(*value)) throw ParseError(line_no, "malformed attenuation '" + text::trim(fields[1]) + "'");
    if (!out.epoch_seconds.empty()) {
      const std::int64_t step = *epoch - out.epoch_seconds.back();
      if (step <= 0) throw ParseError(line_no, "timestamp " + ts + " does not increase");
      if (step % cadence_s != 0) throw ParseError(line_no, "timestamp " + ts + " is off the 1-minute cadence");
      if (step > cadence_s) out.gaps.push_back({out.size(), step / cadence_s - 1});
    }
    out.timestamps.push_back(ts);
    out.epoch_seconds.push_back(*epoch);
    out.attenuation_db.push_back(*value);
  }
  return out;
}

AttenuationSeries ingest_series(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open series file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_series(ss.str());
}

std::string format_series(const AttenuationSeries& series) {
  std::string out = "timestamp_iso8601,attenuation_db\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += series.timestamps[i];
    out += ',';
    out += text::format_double(series.attenuation_db[i]);
    out += '\n';
  }
  return out;
}

void write_series(const std::string& path, const AttenuationSeries& series) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << format_series(series);
  if (!out.flush()) throw IoError(path, "write failed");
}

AttenuationSeries make_series(std::int64_t start_epoch_seconds, const std::vector<double>& attenuation_db) {
  AttenuationSeries s;
  s.attenuation_db = attenuation_db;
  for (std::size_t i = 0; i < attenuation_db.size(); ++i) {
    const std::int64_t t = start_epoch_seconds + cadence_s * static_cast<std::int64_t>(i);
    s.epoch_seconds.push_back(t);
    s.timestamps.push_back(format_iso8601(t));
  }
  return s;
}

}  // namespace rainbound
