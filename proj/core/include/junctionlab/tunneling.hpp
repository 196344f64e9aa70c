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

// Quasiparticle tunneling through NIS / SIS junctions with Dynes-broadened
// BCS densities of states, plus the dI/dV gap-extraction and subgap-leakage
// analyses. Units: mV (= meV for energies), nA, kOhm, K.

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "junctionlab/trace.hpp"

namespace junctionlab::tunneling {

struct SuperconductorModel {
    double gap_meV{0.0};        ///< zero-temperature gap; 0 means normal metal
    double dynes_gamma{0.0};    ///< broadening Gamma = gamma * gap
    double critical_temperature_K{0.0};

    [[nodiscard]] bool is_normal() const { return gap_meV == 0.0; }
    void validate() const;

    static SuperconductorModel normal_metal() { return {}; }
};

struct JunctionDC {
    double normal_resistance_kOhm{};
    SuperconductorModel left;
    SuperconductorModel right;

    void validate() const;
};

/// Delta(T) = Delta0 tanh(1.74 sqrt(Tc/T - 1)) below Tc, 0 above.
double bcs_gap(const SuperconductorModel& sc, double temperature_K);

/// |Re[(E + i Gamma) / sqrt((E + i Gamma)^2 - Delta^2)]| with Gamma = gamma * Delta0.
double dynes_dos(double energy_meV, double gap_meV, double broadening_meV);

/// Density of states at the zero-temperature gap.
double dynes_dos(double energy_meV, const SuperconductorModel& sc);

struct QuadratureOptions {
    double relative_tolerance{1e-10};
    /// Accepted quadrature error as a fraction of |V| / R_N.
    double max_error_fraction{1e-3};
};

/// Quasiparticle current I(V) = (1/eR_N) int N_L(E) N_R(E+eV) [f(E) - f(E+eV)] dE.
/// Each electrode's gap follows bcs_gap at the bath temperature; the
/// normal-state part is integrated analytically, so two normal electrodes give
/// exactly V/R_N.
double tunnel_current(double voltage_mV, const JunctionDC& junction, double temperature_K,
                      const QuadratureOptions& options = {});

/// Pointwise tunnel_current over a strictly increasing grid (>= 2 points).
SampledTrace iv_curve(const JunctionDC& junction, double temperature_K,
                      std::span<const double> voltage_grid_mV);

inline constexpr double kDefaultOnsetFraction = 0.2;

/// Lowest positive voltage at which I reaches `fraction` of the ohmic current
/// V/R_N, linearly interpolated between samples; empty when never reached.
std::optional<double> current_onset_mV(const SampledTrace& iv, double normal_resistance_kOhm,
                                       double fraction = kDefaultOnsetFraction);

/// dI/dV in 1/kOhm: central differences inside, one-sided at the ends.
SampledTrace numerical_didv(const SampledTrace& iv);

struct VoltageWindow {
    double lo_mV{};
    double hi_mV{std::numeric_limits<double>::infinity()};
};

/// Windows on |V|: sum gap above 1.4 mV, difference gap between 1.0 and 1.4 mV.
inline constexpr VoltageWindow kSumGapWindow{1.4, std::numeric_limits<double>::infinity()};
inline constexpr VoltageWindow kDifferenceGapWindow{1.0, 1.4};

struct GapPeaks {
    std::optional<double> sum_positive_mV;
    std::optional<double> sum_negative_mV;
    std::optional<double> difference_positive_mV;
    std::optional<double> difference_negative_mV;

    /// Mean of |V| over the peaks found on either side.
    [[nodiscard]] std::optional<double> sum_mV() const;
    [[nodiscard]] std::optional<double> difference_mV() const;
};

struct PeakSearchOptions {
    VoltageWindow sum_window{kSumGapWindow};
    VoltageWindow difference_window{kDifferenceGapWindow};
    /// A maximum counts when it rises above the window minimum by this fraction
    /// of the normal-state conductance (taken from the trace ends).
    double min_prominence_fraction{0.01};
};

/// Highest local maximum of dI/dV in each window, separately for V > 0 and V < 0,
/// refined by a 3-point parabola. Missing peaks are reported as empty.
GapPeaks find_gap_peaks(const SampledTrace& didv, const PeakSearchOptions& options = {});

struct GapRow {
    double temperature_K{};
    double delta_Nb_meV{};
    double delta_Al_meV{};
    double sum_peak_mV{};
    std::optional<double> difference_peak_mV;
    bool plateau_rule{false};
};

struct GapExtractionResult {
    std::vector<GapRow> rows;  ///< ascending temperature
    double plateau_delta_Nb_meV{};
    std::vector<std::string> warnings;
};

struct GapExtractionOptions {
    PeakSearchOptions peaks{};
    /// Below this temperature a missing difference peak is expected.
    double plateau_temperature_K{0.4};
    /// Complete rows at or below this temperature define the Delta_Nb plateau.
    double plateau_max_temperature_K{0.6};
};

/// Delta_Nb = (V_sum + V_diff)/2 and Delta_Al = (V_sum - V_diff)/2 per bath
/// temperature. Without a difference peak, Delta_Nb is held at its
/// low-temperature plateau and Delta_Al = V_sum - Delta_Nb. Accepts IV traces
/// (nA) or dI/dV traces (1/kOhm); every trace must carry a temperature.
GapExtractionResult extract_gaps_vs_temperature(std::span<const SampledTrace> traces,
                                                const GapExtractionOptions& options = {});

struct SubgapFit {
    double resistance_MOhm{};
    double resistance_std_error_MOhm{};
    double slope_nA_per_mV{};
    double intercept_nA{};
    std::size_t points{};
};

inline constexpr VoltageWindow kDefaultSubgapWindow{-0.2, 0.2};
inline constexpr std::size_t kMinSubgapPoints = 6;

/// Least-squares line through the IV points with V inside [lo, hi].
SubgapFit subgap_linear_fit(const SampledTrace& iv,
                            const VoltageWindow& window = kDefaultSubgapWindow);

/// gamma = R_N / R_subgap.
double dynes_gamma_estimate(double normal_resistance_kOhm, double subgap_resistance_MOhm);

}  // namespace junctionlab::tunneling
