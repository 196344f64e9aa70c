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
#include <vector>

#include "junctionlab/circuit_spectra.hpp"
#include "junctionlab/tunneling.hpp"
#include "workbench/config.hpp"
#include "workbench/report.hpp"

namespace workbench {

/// Where a command writes its plot-data CSVs; file names are recorded in the report.
class OutputSink {
public:
    OutputSink(std::filesystem::path directory, std::string command, Report& report)
        : directory_(std::move(directory)), command_(std::move(command)), report_(report) {}

    /// Writes <directory>/<command>_<name>.csv.
    void plot(const std::string& name, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& columns);

    [[nodiscard]] const std::filesystem::path& directory() const { return directory_; }

private:
    std::filesystem::path directory_;
    std::string command_;
    Report& report_;
};

struct CircuitOptions {
    double shunt_fF{100.0};
    double junction1_fF{10.0};
    double junction2_fF{10.0};
    double gate1_fF{junctionlab::circuit::kReferenceGateCapacitance_fF};
    double gate2_fF{junctionlab::circuit::kReferenceGateCapacitance_fF};
    std::optional<double> josephson1_GHz;
    std::optional<double> josephson2_GHz;
    /// Multiplies C_S and both E_J.
    double scale{1.0};
    std::optional<int> n_max;

    /// Throws junctionlab::InputError when an E_J is missing.
    [[nodiscard]] junctionlab::circuit::DoubleJunctionParams params() const;
};

struct SpectrumOptions {
    CircuitOptions circuit;
    double ng_minus{0.0};
    double ng_plus{0.0};
    int levels{6};
    std::string sweep;  // "" or "ng"
    int grid{5};
};

struct DispersionOptions {
    CircuitOptions circuit;
    int grid{5};
};

struct IvOptions {
    double normal_resistance_kOhm{10.0};
    double left_gap_meV{0.0};
    double left_gamma{0.0};
    double left_tc_K{0.0};
    double right_gap_meV{1.42};
    double right_gamma{0.0};
    double right_tc_K{9.2};
    double temperature_K{1.3};
    double v_min_mV{-3.0};
    double v_max_mV{3.0};
    double v_step_mV{0.01};
    double subgap_lo_mV{junctionlab::tunneling::kDefaultSubgapWindow.lo_mV};
    double subgap_hi_mV{junctionlab::tunneling::kDefaultSubgapWindow.hi_mV};
    double onset_fraction{junctionlab::tunneling::kDefaultOnsetFraction};
};

struct GapOptions {
    std::vector<std::string> inputs;
    double sum_lo_mV{junctionlab::tunneling::kSumGapWindow.lo_mV};
    double difference_lo_mV{junctionlab::tunneling::kDifferenceGapWindow.lo_mV};
    double difference_hi_mV{junctionlab::tunneling::kDifferenceGapWindow.hi_mV};
    double min_prominence{0.01};
    double plateau_temperature_K{0.4};
    double plateau_max_temperature_K{0.6};
};

enum class DecayModel { t1, ramsey, echo };

struct DecayOptions {
    std::string input;
    std::optional<double> f_ge_GHz;  // adds Q for T1 fits
};

struct RaOptions {
    std::string input;
    std::vector<double> predict_d_nm{600.0};
};

struct TrendOptions {
    std::string input;
    double band_GHz{0.1};
};

struct LossOptions {
    std::string input;               // optional JSON budget file
    std::vector<std::string> terms;  // name:participation:tan_delta
    std::optional<double> target_inverse_q;
    std::optional<double> junction_fF;
    std::optional<double> shunt_fF;
    std::optional<double> inverse_q;
    std::vector<double> josephson_GHz;
    std::optional<double> effective_capacitance_fF;
    std::optional<double> subgap_MOhm;
    std::optional<double> impedance_ohm;
    std::vector<double> geometry_nm;  // lateral, barrier, sidewall, electrode
    double eps_r{9.8};
};

// Each command fills report.results / report.warnings and writes plot data.
// Library exceptions propagate; a fit that does not converge sets
// report.status = RunStatus::not_converged.
void simulate_spectrum(const SpectrumOptions& opts, const RunConfig& cfg, Report& report,
                       OutputSink& sink);
void sweep_dispersion(const DispersionOptions& opts, const RunConfig& cfg, Report& report,
                      OutputSink& sink);
void simulate_iv(const IvOptions& opts, const RunConfig& cfg, Report& report, OutputSink& sink);
void extract_gaps(const GapOptions& opts, const RunConfig& cfg, Report& report, OutputSink& sink);
void fit_decay(DecayModel model, const DecayOptions& opts, const RunConfig& cfg, Report& report,
               OutputSink& sink);
void fit_ra(const RaOptions& opts, const RunConfig& cfg, Report& report, OutputSink& sink);
void freq_trend(const TrendOptions& opts, const RunConfig& cfg, Report& report, OutputSink& sink);
void loss_budget(const LossOptions& opts, const RunConfig& cfg, Report& report, OutputSink& sink);

}  // namespace workbench
