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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "junctionlab/least_squares.hpp"
#include "junctionlab/trace.hpp"

namespace junctionlab::fit {

/// a * exp(-t / T) + c, parameters {a, T, c}.
ParametricModel exponential_decay_model(const std::string& time_constant_name);

/// a * exp(-t / T2*) * cos(2 pi f_d t + phi) + c, parameters
/// {a, T2_star_us, detuning_MHz, phase_rad, c}. Time in microseconds.
ParametricModel ramsey_model();

/// T1 fit on a population-vs-delay trace (delay in us).
/// Report parameters: amplitude, T1_us, offset.
FitReport fit_t1(const SampledTrace& trace, const LeastSquaresOptions& options = {});

/// Report parameters: amplitude, T2_echo_us, offset.
FitReport fit_echo(const SampledTrace& trace, const LeastSquaresOptions& options = {});

/// Report parameters: amplitude, T2_star_us, detuning_MHz, phase_rad, offset.
/// Without a resolvable oscillation (less than one period of the dominant
/// spectral component in the window) a pure decay is fitted instead:
/// amplitude, T2_star_us, offset, and a warning.
FitReport fit_ramsey(const SampledTrace& trace, const LeastSquaresOptions& options = {});

/// Frequency (MHz, cycles per us) of the strongest discrete Fourier component
/// of the mean-removed data, sampled on a grid 8x finer than 1/span.
/// Returns 0 when no component beats the zero-frequency end of the grid.
double dominant_frequency_MHz(std::span<const double> t_us, std::span<const double> y);

/// Q = 2 pi f T1.
double quality_factor(double f_ge_GHz, double t1_us);

struct WaferResistancePoint {
    double d_nm{};
    double resistance_ohm{};
    std::optional<int> die_x;
    std::optional<int> die_y;

    void validate() const;
};

/// R = RA / ((d - l) / 1000)^2 with RA in ohm um^2, l and d in nm.
double resistance_from_area(double ra_ohm_um2, double l_nm, double d_nm);

/// Fits {RA_ohm_um2, l_nm} with relative residuals, l < min(d).
/// Needs >= 4 points spanning at least a factor 2 in d.
FitReport fit_resistance_area(std::span<const WaferResistancePoint> points,
                              const LeastSquaresOptions& options = {});

struct SizeFrequencyPoint {
    double d_nm{};
    double f_ge_GHz{};
    std::string group;  // chip label; empty when unknown
};

struct GroupOffset {
    std::string group;
    double mean_residual_GHz{};
    std::size_t count{};
    bool outside_band{};
};

struct FrequencyTrend {
    FitReport fit;  // {slope_GHz_per_nm, intercept_GHz}
    std::vector<double> residuals_GHz;
    double max_abs_residual_GHz{};
    double band_GHz{};
    std::vector<std::size_t> outside_band;  // point indices with |residual| > band
    std::vector<GroupOffset> groups;        // sorted by label
    std::vector<std::string> warnings;
};

inline constexpr double kTrendBandGHz = 0.1;

FrequencyTrend frequency_size_trend(std::span<const SizeFrequencyPoint> points,
                                    double band_GHz = kTrendBandGHz);

struct CoherenceRecord {
    double timestamp_s{};
    std::optional<double> t1_us;
    std::optional<double> t2_star_us;
    std::optional<double> t2_echo_us;
    double f_ge_GHz{};

    void validate() const;
};

struct QuantityStats {
    std::size_t count{};
    double mean{};
    double std_dev{};  // sample standard deviation; 0 for a single value
    double min{};
    double max{};
};

struct CoherenceStats {
    std::size_t records{};
    QuantityStats t1_us;
    QuantityStats t2_star_us;
    QuantityStats t2_echo_us;
    QuantityStats f_ge_GHz;
    /// Mean T1 over the series (the headline figure); NaN when no T1 present.
    double time_averaged_t1_us{};
    std::vector<std::string> warnings;
};

/// Needs >= 2 records. Records whose T2_echo is below T2* raise a warning.
CoherenceStats coherence_time_series_stats(std::span<const CoherenceRecord> records);

/// Warning text when an echo time falls below the Ramsey time, else empty.
std::optional<std::string> echo_consistency_warning(double t2_star_us, double t2_echo_us);

}  // namespace junctionlab::fit
