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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rainbound {

// Column names carry their unit as a suffix, e.g. "rmse_mm_h".
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row();
  CsvTable& add(double v);  // shortest round-trip decimal
  CsvTable& add(long long v);
  CsvTable& add(std::size_t v) { return add(static_cast<long long>(v)); }
  CsvTable& add(int v) { return add(static_cast<long long>(v)); }
  CsvTable& add(bool v) { return add(static_cast<long long>(v ? 1 : 0)); }
  CsvTable& add(std::string_view v);
  CsvTable& add(const char* v) { return add(std::string_view(v)); }

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return cells_.size(); }

  // Throws DomainError when a row has the wrong width.
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> cells_;
};

struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Plain comma split; the writer never emits quoted fields.
ParsedCsv parse_csv(std::string_view text);

void write_text(const std::filesystem::path& path, std::string_view content);

}  // namespace rainbound
