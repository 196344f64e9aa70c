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
#include <optional>
#include <string>

#include "junctionlab/circuit_spectra.hpp"
#include "junctionlab/errors.hpp"
#include "junctionlab/least_squares.hpp"
#include "workbench/report.hpp"

namespace workbench {

inline constexpr const char* kConfigEnvVar = "JUNCTIONLAB_CONFIG";

/// Invalid configuration file or values; reported as a usage error.
class ConfigError : public junctionlab::InputError {
public:
    using junctionlab::InputError::InputError;
};

struct PhysicalConstants {
    double elementary_charge_C;
    double planck_J_s;
    double boltzmann_J_per_K;
    double vacuum_permittivity_F_per_m;

    static PhysicalConstants codata();
};

/// Settings shared by every subcommand. JSON layout:
///   { "constants": {...}, "truncation": {"n_max", "convergence_tol_Hz"},
///     "fit": {"max_iterations", "relative_residual_tol", "gradient_tol"},
///     "output_dir": "...", "commands": {"<subcommand>": {"<option>": value}} }
struct RunConfig {
    PhysicalConstants constants{PhysicalConstants::codata()};
    junctionlab::circuit::TruncationSpec truncation{};
    junctionlab::fit::LeastSquaresOptions fit{};
    std::filesystem::path output_dir{"."};
    /// Per-subcommand option defaults, keyed by long option name without dashes.
    Json commands = Json::object();
    std::optional<std::filesystem::path> source;

    /// Effective values, echoed into every report.
    [[nodiscard]] Json to_json() const;
};

RunConfig parse_config(const Json& document, std::optional<std::filesystem::path> source = {});

/// Reads `explicit_path` if set, otherwise the file named by JUNCTIONLAB_CONFIG,
/// otherwise returns defaults.
RunConfig load_config(const std::optional<std::filesystem::path>& explicit_path);

}  // namespace workbench
