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

#include "rainbound/csv.hpp"

#include <fstream>

#include "rainbound/errors.hpp"
#include "rainbound/text.hpp"

namespace rainbound {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw DomainError("csv header must not be empty");
}

CsvTable& CsvTable::row() {
  cells_.emplace_back();
  cells_.back().reserve(header_.size());
  return *this;
}

CsvTable& CsvTable::add(double v) { return add(std::string_view(text::format_double(v))); }

CsvTable& CsvTable::add(long long v) { return add(std::string_view(std::to_string(v))); }

CsvTable& CsvTable::add(std::string_view v) {
  if (cells_.empty()) row();
  if (v.find_first_of(",\n\r") != std::string_view::npos) throw DomainError("csv cell contains a separator");
  cells_.back().emplace_back(v);
  return *this;
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& r : cells_) {
    if (r.size() != header_.size()) throw DomainError("csv row width does not match header");
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += r[i];
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

ParsedCsv parse_csv(std::string_view text) {
  ParsedCsv out;
  std::size_t start = 0;
  bool first = true;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = text::split(line, ',');
    if (first) {
      out.header = std::move(fields);
      first = false;
    } else {
      out.rows.push_back(std::move(fields));
    }
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out.flush()) throw IoError(path.string(), "write failed");
}

}  // namespace rainbound
