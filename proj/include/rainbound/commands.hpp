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

#include "rainbound/config.hpp"

namespace rainbound {

// bounds, geometry, alloc, detect, estimate, mc.
const std::vector<std::string>& command_names();
bool is_command(std::string_view name);

struct CommandRun {
  std::string command;
  std::filesystem::path out_dir;
  std::string series_path;  // optional attenuation series for detect / estimate
};

// Writes the command's tables plus manifest.json into out_dir (created if
// missing) and returns the file names written, manifest last.
std::vector<std::string> run_command(const RunConfig& cfg, const CommandRun& run);

}  // namespace rainbound
