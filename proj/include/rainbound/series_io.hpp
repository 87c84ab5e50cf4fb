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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rainbound {

// Seconds since 1970-01-01T00:00:00Z. Accepts YYYY-MM-DDTHH:MM[:SS] with an
// optional Z or +HH:MM / -HH:MM suffix (a space may replace the T).
std::optional<std::int64_t> parse_iso8601(std::string_view s);
// YYYY-MM-DDTHH:MM:SSZ.
std::string format_iso8601(std::int64_t epoch_seconds);

struct SeriesGap {
  std::size_t before_index = 0;  // first sample after the gap
  std::int64_t missing_minutes = 0;
};

struct AttenuationSeries {
  std::vector<std::string> timestamps;  // as written in the source
  std::vector<std::int64_t> epoch_seconds;
  std::vector<double> attenuation_db;
  std::vector<SeriesGap> gaps;

  std::size_t size() const noexcept { return attenuation_db.size(); }
};

// Lines "timestamp_iso8601,attenuation_db"; optional header; blank lines and
// '#' comments skipped. Timestamps must increase on the 1-minute grid; longer
// steps are recorded as gaps. Throws ParseError naming the line.
AttenuationSeries parse_series(std::string_view text);
AttenuationSeries ingest_series(const std::string& path);

std::string format_series(const AttenuationSeries& series);
void write_series(const std::string& path, const AttenuationSeries& series);

// Regular 1-minute series starting at epoch_seconds.
AttenuationSeries make_series(std::int64_t start_epoch_seconds, const std::vector<double>& attenuation_db);

}  // namespace rainbound
