// Copyright 2026 The junctionlab Authors
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
#include <vector>

#include <json.hpp>

namespace workbench {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "junctionlab";

std::string tool_version();

/// Lower-case hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Writes `contents` to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

enum class RunStatus { ok, not_converged, failed };

/// One JSON document per command run. Contains no timestamps, so identical
/// inputs and configuration give byte-identical output.
struct Report {
    std::string command;
    std::vector<std::filesystem::path> inputs;
    Json config = Json::object();
    Json parameters = Json::object();
    Json results = Json::object();
    std::vector<std::string> warnings;
    std::vector<std::string> outputs;
    RunStatus status{RunStatus::ok};
    std::string error;

    void add_input(const std::filesystem::path& path) { inputs.push_back(path); }
    void warn(std::string message) { warnings.push_back(std::move(message)); }
    void warn_all(const std::vector<std::string>& messages) {
        warnings.insert(warnings.end(), messages.begin(), messages.end());
    }

    [[nodiscard]] Json to_json() const;
    /// Pretty-printed JSON followed by a newline.
    [[nodiscard]] std::string dump() const;
};

}  // namespace workbench
