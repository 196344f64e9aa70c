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

// CSV ingestion with exact, unit-suffixed headers:
//   iv      voltage_mV,current_nA[,temperature_K]
//   didv    voltage_mV,conductance_per_kohm
//   decay   delay_us,population
//   prober  die_x,die_y,d_nm,resistance_ohm
//   trend   d_nm,f_ge_GHz[,group]
// Lines starting with '#' and blank lines are ignored.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "junctionlab/coherence_fits.hpp"
#include "junctionlab/errors.hpp"
#include "junctionlab/trace.hpp"

namespace workbench {

enum class TraceKind { iv, didv, decay, prober, trend };

TraceKind parse_trace_kind(const std::string& name);

/// Malformed CSV content; line 0 means the file as a whole.
class ParseError : public junctionlab::InputError {
public:
    ParseError(const std::filesystem::path& path, std::size_t line, const std::string& message);
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct LoadedCsv {
    std::optional<junctionlab::SampledTrace> trace;            // iv, didv, decay
    std::vector<junctionlab::fit::WaferResistancePoint> points;  // prober
    std::vector<junctionlab::fit::SizeFrequencyPoint> trend;     // trend
    std::vector<std::string> warnings;
};

/// Parses and validates one file. Decay rows out of time order are sorted with a
/// warning; other kinds require strictly increasing x.
LoadedCsv load_trace_csv(const std::filesystem::path& path, TraceKind kind);

/// Regular files ending in .csv, sorted by name; a file path is returned as is.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::string>& inputs);

/// Writes columns with %.17g so that re-reading reproduces every double.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

}  // namespace workbench
