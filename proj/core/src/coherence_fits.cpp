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

#include "junctionlab/coherence_fits.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "junctionlab/constants.hpp"
#include "junctionlab/errors.hpp"

namespace junctionlab::fit {

namespace {

constexpr double kPi = constants::kTwoPi / 2.0;

double span_of(std::span<const double> t) { return t.back() - t.front(); }

void require_points(const SampledTrace& trace, std::size_t params) {
    if (trace.size() < params + 1) {
        throw InsufficientDataError(fmt::format(
            "{}-parameter fit needs at least {} points, trace has {}", params, params + 1,
            trace.size()));
    }
}

void require_variation(std::span<const double> y, const char* what) {
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double scale = std::max(std::abs(*lo), std::abs(*hi));
    if (scale == 0.0 || *hi - *lo <= 1e-12 * scale) {
        throw DegenerateModelError(fmt::format("trace has no variation; {} is unidentifiable", what));
    }
}

struct DecayGuess {
    double amplitude;
    double time_constant;
    double offset;
};

// Weighted log-linear regression of |y - floor|, with the floor placed just
// beyond the extreme value the decay approaches.
DecayGuess decay_guess(std::span<const double> t, std::span<const double> y) {
    const std::size_t n = y.size();
    const std::size_t quarter = std::max<std::size_t>(1, n / 4);
    const double head = std::accumulate(y.begin(), y.begin() + quarter, 0.0) / quarter;
    const double tail = std::accumulate(y.end() - quarter, y.end(), 0.0) / quarter;
    const double sign = head >= tail ? 1.0 : -1.0;
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double range = *hi - *lo;
    const double floor = sign > 0 ? *lo - 0.01 * range : *hi + 0.01 * range;

    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = sign * (y[i] - floor);
        if (z <= 0.0) continue;
        const double w = z * z;
        const double ly = std::log(z);
        sw += w;
        swx += w * t[i];
        swy += w * ly;
        swxx += w * t[i] * t[i];
        swxy += w * t[i] * ly;
    }
    const double span = span_of(t);
    const double det = sw * swxx - swx * swx;
    double slope = det > 0 ? (sw * swxy - swx * swy) / det : 0.0;
    const double intercept = sw > 0 ? (swy - slope * swx) / sw : std::log(range);
    double tau = slope < 0 ? -1.0 / slope : span;
    tau = std::clamp(tau, 1e-3 * span, 1e3 * span);
    return {sign * std::exp(intercept), tau, floor};
}

FitReport fit_decay(const SampledTrace& trace, const std::string& name,
                    const LeastSquaresOptions& options) {
    require_points(trace, 3);
    require_variation(trace.y(), name.c_str());
    const auto t = trace.x();
    const auto y = trace.y();
    const DecayGuess g = decay_guess(t, y);
    const double span = span_of(t);
    const double init[] = {g.amplitude, g.time_constant, g.offset};
    Bounds bounds = Bounds::unbounded(3);
    bounds.lower[1] = 1e-6 * span;
    bounds.upper[1] = 1e6 * span;
    FitReport report = damped_least_squares(exponential_decay_model(name), trace, init, bounds, options);
    if (report.params[1] >= 1e3 * span) {
        report.warnings.push_back(fmt::format(
            "{} = {:.6g} us is far beyond the {:.6g} us window; the decay is barely resolved", name,
            report.params[1], span));
    }
    return report;
}

double wrap_phase(double phi) {
    phi = std::remainder(phi, constants::kTwoPi);
    return phi <= -kPi ? phi + constants::kTwoPi : phi;
}

}  // namespace

ParametricModel exponential_decay_model(const std::string& time_constant_name) {
    ParametricModel m;
    m.names = {"amplitude", time_constant_name, "offset"};
    m.value = [](double t, std::span<const double> p) { return p[0] * std::exp(-t / p[1]) + p[2]; };
    m.gradient = [](double t, std::span<const double> p, std::span<double> g) {
        const double e = std::exp(-t / p[1]);
        g[0] = e;
        g[1] = p[0] * e * t / (p[1] * p[1]);
        g[2] = 1.0;
    };
    return m;
}

ParametricModel ramsey_model() {
    ParametricModel m;
    m.names = {"amplitude", "T2_star_us", "detuning_MHz", "phase_rad", "offset"};
    m.value = [](double t, std::span<const double> p) {
        return p[0] * std::exp(-t / p[1]) * std::cos(constants::kTwoPi * p[2] * t + p[3]) + p[4];
    };
    m.gradient = [](double t, std::span<const double> p, std::span<double> g) {
        const double e = std::exp(-t / p[1]);
        const double arg = constants::kTwoPi * p[2] * t + p[3];
        const double c = std::cos(arg);
        const double s = std::sin(arg);
        g[0] = e * c;
        g[1] = p[0] * e * c * t / (p[1] * p[1]);
        g[2] = -p[0] * e * s * constants::kTwoPi * t;
        g[3] = -p[0] * e * s;
        g[4] = 1.0;
    };
    return m;
}

FitReport fit_t1(const SampledTrace& trace, const LeastSquaresOptions& options) {
    return fit_decay(trace, "T1_us", options);
}

FitReport fit_echo(const SampledTrace& trace, const LeastSquaresOptions& options) {
    return fit_decay(trace, "T2_echo_us", options);
}

double dominant_frequency_MHz(std::span<const double> t, std::span<const double> y) {
    const std::size_t n = t.size();
    if (n < 3) return 0.0;
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    std::vector<double> dt(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) dt[i] = t[i + 1] - t[i];
    std::nth_element(dt.begin(), dt.begin() + dt.size() / 2, dt.end());
    const double nyquist = 0.5 / dt[dt.size() / 2];
    const double step = 1.0 / (8.0 * span_of(t));
    const auto bins = static_cast<std::size_t>(nyquist / step);
    if (bins < 2) return 0.0;

    auto power = [&](double f) {
        std::complex<double> acc{};
        for (std::size_t i = 0; i < n; ++i) {
            acc += (y[i] - mean) * std::polar(1.0, -constants::kTwoPi * f * t[i]);
        }
        return std::norm(acc);
    };
    std::vector<double> spectrum(bins + 1);
    for (std::size_t k = 1; k <= bins; ++k) spectrum[k] = power(static_cast<double>(k) * step);
    const auto best = static_cast<std::size_t>(
        std::max_element(spectrum.begin() + 1, spectrum.end()) - spectrum.begin());
    double offset = 0.0;
    if (best > 1 && best < bins) {
        const double a = spectrum[best - 1], b = spectrum[best], c = spectrum[best + 1];
        const double denom = a - 2.0 * b + c;
        if (denom < 0.0) offset = 0.5 * (a - c) / denom;
    }
    return (static_cast<double>(best) + offset) * step;
}

FitReport fit_ramsey(const SampledTrace& trace, const LeastSquaresOptions& options) {
    require_points(trace, 5);
    require_variation(trace.y(), "T2_star_us");
    const auto t = trace.x();
    const auto y = trace.y();
    const double span = span_of(t);
    const double f0 = dominant_frequency_MHz(t, y);

    if (f0 * span < 1.0) {
        FitReport report = fit_decay(trace, "T2_star_us", options);
        report.warnings.insert(
            report.warnings.begin(),
            fmt::format("no oscillation resolved (dominant component {:.4g} MHz spans {:.3g} "
                        "periods); fitted a pure exponential decay",
                        f0, f0 * span));
        return report;
    }

    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    std::complex<double> acc{};
    for (std::size_t i = 0; i < t.size(); ++i) {
        acc += (y[i] - mean) * std::polar(1.0, -constants::kTwoPi * f0 * t[i]);
    }
    const double phase0 = std::arg(acc);
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double amplitude0 = 0.5 * (*hi - *lo);

    Bounds bounds = Bounds::unbounded(5);
    bounds.lower[1] = 1e-6 * span;
    bounds.upper[1] = 1e6 * span;
    bounds.lower[2] = 0.0;
    bounds.upper[2] = 4.0 * f0 + 1.0 / span;

    const ParametricModel model = ramsey_model();
    std::optional<FitReport> best;
    for (double fraction : {0.25, 0.5, 1.0}) {
        const double init[] = {amplitude0, fraction * span, f0, phase0, mean};
        FitReport candidate = damped_least_squares(model, trace, init, bounds, options);
        const bool better =
            !best || (candidate.converged && !best->converged) ||
            (candidate.converged == best->converged && candidate.residual_norm < best->residual_norm);
        if (better) best = std::move(candidate);
    }
    FitReport report = std::move(*best);
    if (report.params[0] < 0.0) {
        report.params[0] = -report.params[0];
        report.params[3] += kPi;
    }
    report.params[3] = wrap_phase(report.params[3]);
    return report;
}

double quality_factor(double f_ge_GHz, double t1_us) {
    if (!(f_ge_GHz > 0.0) || !(t1_us > 0.0) || !std::isfinite(f_ge_GHz) || !std::isfinite(t1_us)) {
        throw ParameterError("quality factor needs positive, finite frequency and T1");
    }
    return constants::kTwoPi * f_ge_GHz * t1_us * 1e3;
}

void WaferResistancePoint::validate() const {
    if (!(d_nm > 0.0) || !std::isfinite(d_nm)) {
        throw ParameterError(fmt::format("junction size must be positive, got {} nm", d_nm));
    }
    if (!(resistance_ohm > 0.0) || !std::isfinite(resistance_ohm)) {
        throw ParameterError(fmt::format("resistance must be positive, got {} ohm", resistance_ohm));
    }
}

double resistance_from_area(double ra_ohm_um2, double l_nm, double d_nm) {
    const double w = (d_nm - l_nm) / 1000.0;
    return ra_ohm_um2 / (w * w);
}

FitReport fit_resistance_area(std::span<const WaferResistancePoint> input,
                              const LeastSquaresOptions& options) {
    if (input.size() < 4) {
        throw InsufficientDataError(
            fmt::format("resistance-area fit needs at least 4 points, got {}", input.size()));
    }
    std::vector<WaferResistancePoint> points(input.begin(), input.end());
    for (const auto& p : points) p.validate();
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a.d_nm != b.d_nm ? a.d_nm < b.d_nm : a.resistance_ohm < b.resistance_ohm;
    });
    const double d_min = points.front().d_nm;
    const double d_max = points.back().d_nm;
    if (d_max < 2.0 * d_min) {
        throw DegenerateModelError(fmt::format(
            "junction sizes span {:.4g}-{:.4g} nm (< 2x); RA and l are not separately identifiable",
            d_min, d_max));
    }

    const std::size_t n = points.size();
    std::vector<double> d(n), r(n);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = points[i].d_nm;
        r[i] = points[i].resistance_ohm;
        const double u = 1.0 / std::sqrt(r[i]);
        sx += d[i];
        sy += u;
        sxx += d[i] * d[i];
        sxy += d[i] * u;
    }
    const double nn = static_cast<double>(n);
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / nn;
    if (!(slope > 0.0)) {
        throw DegenerateModelError("resistance does not fall with junction size; RA fit undefined");
    }
    const double l_upper = d_min * (1.0 - 1e-9);
    const double ra0 = 1.0 / std::pow(1000.0 * slope, 2);
    const double l0 = std::clamp(-intercept / slope, -d_max, 0.9 * d_min);

    ParametricModel model;
    model.names = {"RA_ohm_um2", "l_nm"};
    model.value = [](double x, std::span<const double> p) {
        return resistance_from_area(p[0], p[1], x);
    };
    model.gradient = [](double x, std::span<const double> p, std::span<double> g) {
        const double w = (x - p[1]) / 1000.0;
        g[0] = 1.0 / (w * w);
        g[1] = 2.0 * p[0] / (w * w * w) / 1000.0;
    };
    Bounds bounds{{1e-9 * ra0, -d_max}, {std::numeric_limits<double>::infinity(), l_upper}};
    const double init[] = {ra0, l0};
    return damped_least_squares(model, d, r, init, bounds, r, options);
}

FrequencyTrend frequency_size_trend(std::span<const SizeFrequencyPoint> points, double band_GHz) {
    if (points.size() < 3) {
        throw InsufficientDataError(
            fmt::format("frequency trend needs at least 3 points, got {}", points.size()));
    }
    if (!(band_GHz > 0.0)) throw ParameterError("trend band must be positive");
    std::vector<double> d, f;
    for (const auto& p : points) {
        if (!(p.d_nm > 0.0) || !(p.f_ge_GHz > 0.0)) {
            throw ParameterError("trend points need positive size and frequency");
        }
        d.push_back(p.d_nm);
        f.push_back(p.f_ge_GHz);
    }
    ParametricModel model;
    model.names = {"slope_GHz_per_nm", "intercept_GHz"};
    model.value = [](double x, std::span<const double> p) { return p[0] * x + p[1]; };
    model.gradient = [](double x, std::span<const double>, std::span<double> g) {
        g[0] = x;
        g[1] = 1.0;
    };
    const double mean_f = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
    const double init[] = {0.0, mean_f};

    FrequencyTrend out;
    out.band_GHz = band_GHz;
    out.fit = damped_least_squares(model, d, f, init, Bounds::unbounded(2));
    std::map<std::string, std::pair<double, std::size_t>> groups;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double res = f[i] - model.value(d[i], out.fit.params);
        out.residuals_GHz.push_back(res);
        out.max_abs_residual_GHz = std::max(out.max_abs_residual_GHz, std::abs(res));
        if (std::abs(res) > band_GHz) out.outside_band.push_back(i);
        if (!points[i].group.empty()) {
            auto& g = groups[points[i].group];
            g.first += res;
            g.second += 1;
        }
    }
    if (!out.outside_band.empty()) {
        out.warnings.push_back(fmt::format(
            "{} of {} points lie outside the +/-{:.3g} GHz band (max |residual| {:.4g} GHz)",
            out.outside_band.size(), points.size(), band_GHz, out.max_abs_residual_GHz));
    }
    if (groups.size() >= 2) {
        for (const auto& [label, acc] : groups) {
            GroupOffset g{label, acc.first / static_cast<double>(acc.second), acc.second, false};
            g.outside_band = std::abs(g.mean_residual_GHz) > band_GHz;
            if (g.outside_band) {
                out.warnings.push_back(fmt::format("group {} is offset {:+.4g} GHz from the common trend",
                                                   label, g.mean_residual_GHz));
            }
            out.groups.push_back(std::move(g));
        }
    }
    return out;
}

void CoherenceRecord::validate() const {
    auto check = [](const std::optional<double>& v, const char* name) {
        if (v && (!(*v > 0.0) || !std::isfinite(*v))) {
            throw ParameterError(fmt::format("{} must be positive, got {}", name, *v));
        }
    };
    check(t1_us, "T1");
    check(t2_star_us, "T2*");
    check(t2_echo_us, "T2_echo");
    if (!(f_ge_GHz > 0.0) || !std::isfinite(f_ge_GHz)) {
        throw ParameterError(fmt::format("f_ge must be positive, got {}", f_ge_GHz));
    }
}

std::optional<std::string> echo_consistency_warning(double t2_star_us, double t2_echo_us) {
    if (t2_echo_us >= t2_star_us) return std::nullopt;
    return fmt::format("T2_echo = {:.4g} us is below T2* = {:.4g} us; echo normally refocuses "
                       "quasi-static dephasing",
                       t2_echo_us, t2_star_us);
}

namespace {

QuantityStats stats_of(const std::vector<double>& v) {
    QuantityStats s;
    s.count = v.size();
    if (v.empty()) {
        s.mean = s.std_dev = s.min = s.max = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    const double n = static_cast<double>(v.size());
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std_dev = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    s.min = *lo;
    s.max = *hi;
    return s;
}

}  // namespace

CoherenceStats coherence_time_series_stats(std::span<const CoherenceRecord> records) {
    if (records.size() < 2) {
        throw InsufficientDataError(
            fmt::format("time-series statistics need at least 2 records, got {}", records.size()));
    }
    std::vector<double> t1, t2s, t2e, f;
    CoherenceStats out;
    out.records = records.size();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        r.validate();
        if (r.t1_us) t1.push_back(*r.t1_us);
        if (r.t2_star_us) t2s.push_back(*r.t2_star_us);
        if (r.t2_echo_us) t2e.push_back(*r.t2_echo_us);
        f.push_back(r.f_ge_GHz);
        if (r.t2_star_us && r.t2_echo_us) {
            if (auto w = echo_consistency_warning(*r.t2_star_us, *r.t2_echo_us)) {
                out.warnings.push_back(fmt::format("record {} (t = {} s): {}", i, r.timestamp_s, *w));
            }
        }
    }
    out.t1_us = stats_of(t1);
    out.t2_star_us = stats_of(t2s);
    out.t2_echo_us = stats_of(t2e);
    out.f_ge_GHz = stats_of(f);
    out.time_averaged_t1_us = out.t1_us.mean;
    return out;
}

}  // namespace junctionlab::fit
