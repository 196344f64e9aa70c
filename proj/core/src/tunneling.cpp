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

#include "junctionlab/tunneling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "junctionlab/constants.hpp"
#include "junctionlab/errors.hpp"

namespace junctionlab::tunneling {
namespace {

constexpr double kFermiCutoff = 36.0;
constexpr double kSliverFraction = 1e-9;  // f(E) ~ exp(-36) ~ 2e-16 beyond this many kT

double fermi_difference(double e, double e_shifted, double kt) {
    // f(e) - f(e_shifted) with f = 1/(1 + exp(E/kT)), written without cancellation.
    return 0.5 * (std::tanh(e_shifted / (2.0 * kt)) - std::tanh(e / (2.0 * kt)));
}

std::string fmt_mV(double v) { return std::to_string(v) + " mV"; }

}  // namespace

void SuperconductorModel::validate() const {
    if (!(gap_meV >= 0.0)) {
        throw ParameterError("gap must be non-negative");
    }
    if (!(dynes_gamma >= 0.0)) {
        throw ParameterError("Dynes gamma must be non-negative");
    }
    if (gap_meV > 0.0 && !(critical_temperature_K > 0.0)) {
        throw ParameterError("a superconductor needs a positive critical temperature");
    }
}

void JunctionDC::validate() const {
    if (!(normal_resistance_kOhm > 0.0)) {
        throw ParameterError("normal-state resistance must be positive");
    }
    left.validate();
    right.validate();
}

double bcs_gap(const SuperconductorModel& sc, double temperature_K) {
    sc.validate();
    if (!(temperature_K > 0.0)) {
        throw ParameterError("temperature must be positive");
    }
    if (sc.is_normal() || temperature_K >= sc.critical_temperature_K) {
        return 0.0;
    }
    return sc.gap_meV *
           std::tanh(1.74 * std::sqrt(sc.critical_temperature_K / temperature_K - 1.0));
}

double dynes_dos(double energy_meV, double gap_meV, double broadening_meV) {
    if (gap_meV == 0.0) {
        return 1.0;
    }
    const std::complex<double> z(std::abs(energy_meV), broadening_meV);
    const std::complex<double> root = std::sqrt(z * z - gap_meV * gap_meV);
    if (std::abs(root) == 0.0) {
        return 0.0;  // integrable singularity exactly at the gap edge
    }
    return std::abs((z / root).real());
}

double dynes_dos(double energy_meV, const SuperconductorModel& sc) {
    sc.validate();
    return dynes_dos(energy_meV, sc.gap_meV, sc.dynes_gamma * sc.gap_meV);
}

double tunnel_current(double voltage_mV, const JunctionDC& junction, double temperature_K,
                      const QuadratureOptions& options) {
    junction.validate();
    if (voltage_mV < 0.0) {
        // Both densities of states are even in energy, so I(-V) = -I(V).
        return -tunnel_current(-voltage_mV, junction, temperature_K, options);
    }
    const double v = voltage_mV;
    const double gap_l = bcs_gap(junction.left, temperature_K);
    const double gap_r = bcs_gap(junction.right, temperature_K);
    const double scale = 1e3 / junction.normal_resistance_kOhm;  // mV/kOhm -> nA
    if (gap_l == 0.0 && gap_r == 0.0) {
        return scale * v;
    }
    const double broad_l = junction.left.dynes_gamma * junction.left.gap_meV;
    const double broad_r = junction.right.dynes_gamma * junction.right.gap_meV;
    const double kt = constants::kBoltzmannMeVPerK * temperature_K;

    // Just above the sum gap two unbroadened edges face each other across the
    // sliver [-gap_l - w, -gap_l], w = V - gap_l - gap_r. The DOS product there
    // integrates to pi/2 sqrt(gap_l gap_r) for any w, which quadrature cannot
    // resolve once w nears the double spacing; take it in closed form.
    // Wider slivers are integrated in theta with e = a + (b - a)(1 - cos theta)/2,
    // which cancels both inverse-square-root edges.
    double sliver = 0.0;
    double v_edges = v;
    bool wide_sliver = false;
    if (broad_l == 0.0 && broad_r == 0.0 && gap_l > 0.0 && gap_r > 0.0) {
        const double sum_gap = gap_l + gap_r;
        const double w = v - sum_gap;
        if (w >= 0.0 && w < kSliverFraction * sum_gap) {
            sliver = 0.5 * std::numbers::pi * std::sqrt(gap_l * gap_r) *
                     fermi_difference(-gap_l, gap_r, kt);
            v_edges = sum_gap;
        } else if (w > 0.0) {
            wide_sliver = true;
        }
    }

    // Integrand minus its normal-state value; the normal part integrates to V.
    auto excess = [&](double e) {
        const double occupation = fermi_difference(e, e + v_edges, kt);
        if (occupation == 0.0) {
            return 0.0;
        }
        const double product = dynes_dos(e, gap_l, broad_l) * dynes_dos(e + v_edges, gap_r, broad_r);
        return (product - 1.0) * occupation;
    };

    const double reach = std::max(v_edges, gap_l + gap_r) + 30.0 * kt;
    const double lo = std::max(-reach, -v_edges - kFermiCutoff * kt);
    const double hi = std::min(reach, 0.0 + kFermiCutoff * kt);

    std::vector<double> breaks{lo, hi, 0.0, -v_edges, gap_l, -gap_l, -v_edges + gap_r, -v_edges - gap_r};
    std::erase_if(breaks, [&](double b) { return b < lo || b > hi; });
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                 breaks.end());

    boost::math::quadrature::tanh_sinh<double> integrator;
    double integral = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double piece_error = 0.0;
        double l1 = 0.0;
        const double a = breaks[i];
        const double b = breaks[i + 1];
        const bool is_sliver = wide_sliver && std::abs(a - (gap_r - v_edges)) < 1e-15 &&
                               std::abs(b + gap_l) < 1e-15;
        try {
            if (is_sliver) {
                const double half = 0.5 * (b - a);
                auto smooth = [&](double theta) {
                    return excess(a + half * (1.0 - std::cos(theta))) * half * std::sin(theta);
                };
                integral += integrator.integrate(smooth, 0.0, std::numbers::pi,
                                                 options.relative_tolerance, &piece_error, &l1);
            } else {
                integral += integrator.integrate(excess, a, b, options.relative_tolerance,
                                                 &piece_error, &l1);
            }
        } catch (const std::exception& ex) {
            throw NumericalError("tunnel-current quadrature failed at V = " + fmt_mV(v) + " on [" +
                                 std::to_string(breaks[i]) + ", " +
                                 std::to_string(breaks[i + 1]) + "] meV: " + ex.what());
        }
        error += piece_error;
    }
    const double allowed = options.max_error_fraction * std::max(std::abs(v), kt);
    if (!std::isfinite(integral) || error > allowed) {
        throw NumericalError("tunnel-current quadrature did not converge at V = " + fmt_mV(v) +
                             " (error estimate " + std::to_string(error) + " meV, allowed " +
                             std::to_string(allowed) + " meV)");
    }
    return scale * (v + integral + sliver);
}

SampledTrace iv_curve(const JunctionDC& junction, double temperature_K,
                      std::span<const double> voltage_grid_mV) {
    std::vector<double> x(voltage_grid_mV.begin(), voltage_grid_mV.end());
    std::vector<double> y;
    y.reserve(x.size());
    for (double v : x) {
        y.push_back(tunnel_current(v, junction, temperature_K));
    }
    auto trace = SampledTrace::with_min_points(std::move(x), std::move(y), AxisUnit::millivolt,
                                               ValueUnit::nanoampere, temperature_K, 2);
    trace.set_meta("kind", "iv");
    trace.set_meta("source", "simulated");
    return trace;
}

std::optional<double> current_onset_mV(const SampledTrace& iv, double normal_resistance_kOhm,
                                       double fraction) {
    if (!(normal_resistance_kOhm > 0.0)) throw ParameterError("R_N must be positive");
    if (!(fraction > 0.0 && fraction < 1.0)) throw ParameterError("onset fraction must lie in (0, 1)");
    const auto v = iv.x();
    const auto i = iv.y();
    // Excess of I over fraction * V / R_N (nA); the onset is its first zero crossing.
    auto excess = [&](std::size_t k) { return i[k] - fraction * v[k] / normal_resistance_kOhm * 1e3; };
    std::optional<std::size_t> previous;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] <= 0.0) continue;
        if (excess(k) >= 0.0) {
            if (!previous) return v[k];
            const double a = excess(*previous);
            const double b = excess(k);
            return v[*previous] + (v[k] - v[*previous]) * (-a) / (b - a);
        }
        previous = k;
    }
    return std::nullopt;
}

SampledTrace numerical_didv(const SampledTrace& iv) {
    if (iv.size() < 5) {
        throw InsufficientDataError("dI/dV needs at least 5 points, got " +
                                    std::to_string(iv.size()));
    }
    if (iv.x_unit() != AxisUnit::millivolt || iv.y_unit() != ValueUnit::nanoampere) {
        throw InputError("dI/dV expects an IV trace in mV / nA");
    }
    const auto x = iv.x();
    const auto y = iv.y();
    const std::size_t n = x.size();
    std::vector<double> g(n);
    // nA/mV = 1e-6 S = 1e-3 / kOhm
    constexpr double to_per_kohm = 1e-3;
    g[0] = (y[1] - y[0]) / (x[1] - x[0]) * to_per_kohm;
    g[n - 1] = (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]) * to_per_kohm;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        g[i] = (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]) * to_per_kohm;
    }
    SampledTrace out(std::vector<double>(x.begin(), x.end()), std::move(g), AxisUnit::millivolt,
                     ValueUnit::per_kiloohm, iv.temperature_K());
    for (const auto& [k, v] : iv.meta()) {
        out.set_meta(k, v);
    }
    out.set_meta("kind", "didv");
    return out;
}

std::optional<double> GapPeaks::sum_mV() const {
    if (sum_positive_mV && sum_negative_mV) {
        return 0.5 * (std::abs(*sum_positive_mV) + std::abs(*sum_negative_mV));
    }
    if (sum_positive_mV) return std::abs(*sum_positive_mV);
    if (sum_negative_mV) return std::abs(*sum_negative_mV);
    return std::nullopt;
}

std::optional<double> GapPeaks::difference_mV() const {
    if (difference_positive_mV && difference_negative_mV) {
        return 0.5 * (std::abs(*difference_positive_mV) + std::abs(*difference_negative_mV));
    }
    if (difference_positive_mV) return std::abs(*difference_positive_mV);
    if (difference_negative_mV) return std::abs(*difference_negative_mV);
    return std::nullopt;
}

namespace {

/// Vertex of the parabola through three points (non-uniform spacing).
double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double curvature = (d2 - d1) / (x2 - x0);
    if (!(curvature < 0.0)) {
        return x1;
    }
    const double vertex = 0.5 * (x0 + x1) - d1 / (2.0 * curvature);
    return std::clamp(vertex, x0, x2);
}

std::optional<double> highest_peak(std::span<const double> x, std::span<const double> y,
                                   double lo, double hi, double min_prominence) {
    std::optional<std::size_t> best;
    double window_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < lo || x[i] > hi) continue;
        window_min = std::min(window_min, y[i]);
        if (i == 0 || i + 1 == x.size()) continue;
        if (y[i] > y[i - 1] && y[i] >= y[i + 1] && (!best || y[i] > y[*best])) {
            best = i;
        }
    }
    if (!best || y[*best] - window_min < min_prominence) {
        return std::nullopt;
    }
    const std::size_t i = *best;
    return parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
}

void check_window(const VoltageWindow& w, double max_abs_v, const char* name) {
    if (!(w.lo_mV >= 0.0) || !(w.hi_mV > w.lo_mV)) {
        throw RangeError(std::string(name) + " window must satisfy 0 <= lo < hi on |V|");
    }
    if (w.lo_mV >= max_abs_v) {
        throw RangeError(std::string(name) + " window starts at " + fmt_mV(w.lo_mV) +
                         ", beyond the trace range |V| <= " + fmt_mV(max_abs_v));
    }
}

}  // namespace

GapPeaks find_gap_peaks(const SampledTrace& didv, const PeakSearchOptions& options) {
    const auto x = didv.x();
    const auto y = didv.y();
    const double max_abs_v = std::max(std::abs(x.front()), std::abs(x.back()));
    const auto& sw = options.sum_window;
    const auto& dw = options.difference_window;
    check_window(sw, max_abs_v, "sum-gap");
    check_window(dw, max_abs_v, "difference-gap");
    if (sw.lo_mV < dw.hi_mV && dw.lo_mV < sw.hi_mV) {
        throw RangeError("sum and difference windows overlap");
    }

    const double normal = 0.5 * (std::abs(y.front()) + std::abs(y.back()));
    const double prominence = options.min_prominence_fraction * normal;

    GapPeaks peaks;
    peaks.sum_positive_mV = highest_peak(x, y, sw.lo_mV, sw.hi_mV, prominence);
    peaks.sum_negative_mV = highest_peak(x, y, -sw.hi_mV, -sw.lo_mV, prominence);
    peaks.difference_positive_mV = highest_peak(x, y, dw.lo_mV, dw.hi_mV, prominence);
    peaks.difference_negative_mV = highest_peak(x, y, -dw.hi_mV, -dw.lo_mV, prominence);
    return peaks;
}

GapExtractionResult extract_gaps_vs_temperature(std::span<const SampledTrace> traces,
                                                const GapExtractionOptions& options) {
    if (traces.empty()) {
        throw InsufficientDataError("gap extraction needs at least one trace");
    }
    struct Found {
        double temperature;
        GapPeaks peaks;
    };
    std::vector<Found> found;
    for (const auto& trace : traces) {
        if (!trace.temperature_K()) {
            throw InputError("gap extraction requires temperature-tagged traces");
        }
        const SampledTrace didv =
            trace.y_unit() == ValueUnit::per_kiloohm ? trace : numerical_didv(trace);
        found.push_back({*trace.temperature_K(), find_gap_peaks(didv, options.peaks)});
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const Found& a, const Found& b) { return a.temperature < b.temperature; });

    GapExtractionResult result;

    // Plateau of Delta_Nb from the coldest rows where both peaks are visible.
    std::vector<double> plateau;
    for (const auto& f : found) {
        const auto s = f.peaks.sum_mV();
        const auto d = f.peaks.difference_mV();
        if (s && d && f.temperature <= options.plateau_max_temperature_K) {
            plateau.push_back(0.5 * (*s + *d));
        }
    }
    if (plateau.empty()) {
        for (const auto& f : found) {
            const auto s = f.peaks.sum_mV();
            const auto d = f.peaks.difference_mV();
            if (s && d) {
                plateau.push_back(0.5 * (*s + *d));
                result.warnings.push_back(
                    "no complete row below " + std::to_string(options.plateau_max_temperature_K) +
                    " K; Delta_Nb plateau taken at " + std::to_string(f.temperature) + " K");
                break;
            }
        }
    }
    if (!plateau.empty()) {
        result.plateau_delta_Nb_meV =
            std::accumulate(plateau.begin(), plateau.end(), 0.0) / static_cast<double>(plateau.size());
    }

    for (const auto& f : found) {
        const auto s = f.peaks.sum_mV();
        if (!s) {
            throw ExtractionError("no sum-gap peak found at T = " + std::to_string(f.temperature) +
                                  " K");
        }
        GapRow row;
        row.temperature_K = f.temperature;
        row.sum_peak_mV = *s;
        row.difference_peak_mV = f.peaks.difference_mV();
        if (row.difference_peak_mV) {
            row.delta_Nb_meV = 0.5 * (*s + *row.difference_peak_mV);
            row.delta_Al_meV = 0.5 * (*s - *row.difference_peak_mV);
        } else {
            if (plateau.empty()) {
                throw ExtractionError("difference-gap peak missing at T = " +
                                      std::to_string(f.temperature) +
                                      " K and no temperature defines a Delta_Nb plateau");
            }
            if (f.temperature >= options.plateau_temperature_K) {
                result.warnings.push_back("difference-gap peak missing at T = " +
                                          std::to_string(f.temperature) +
                                          " K; applying the low-temperature plateau rule");
            }
            row.plateau_rule = true;
            row.delta_Nb_meV = result.plateau_delta_Nb_meV;
            row.delta_Al_meV = *s - result.plateau_delta_Nb_meV;
        }
        if (!(row.delta_Nb_meV >= row.delta_Al_meV && row.delta_Al_meV >= 0.0)) {
            result.warnings.push_back("gap ordering Delta_Nb >= Delta_Al >= 0 violated at T = " +
                                      std::to_string(f.temperature) + " K");
        }
        result.rows.push_back(row);
    }
    return result;
}

SubgapFit subgap_linear_fit(const SampledTrace& iv, const VoltageWindow& window) {
    const auto x = iv.x();
    const auto y = iv.y();
    std::vector<double> vs;
    std::vector<double> is;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= window.lo_mV && x[i] <= window.hi_mV) {
            vs.push_back(x[i]);
            is.push_back(y[i]);
        }
    }
    if (vs.size() < kMinSubgapPoints) {
        throw InsufficientDataError("subgap fit needs at least " +
                                    std::to_string(kMinSubgapPoints) + " points in [" +
                                    fmt_mV(window.lo_mV) + ", " + fmt_mV(window.hi_mV) +
                                    "], got " + std::to_string(vs.size()));
    }
    const double n = static_cast<double>(vs.size());
    const double mean_v = std::accumulate(vs.begin(), vs.end(), 0.0) / n;
    const double mean_i = std::accumulate(is.begin(), is.end(), 0.0) / n;
    double svv = 0.0;
    double svi = 0.0;
    for (std::size_t k = 0; k < vs.size(); ++k) {
        svv += (vs[k] - mean_v) * (vs[k] - mean_v);
        svi += (vs[k] - mean_v) * (is[k] - mean_i);
    }
    if (svv == 0.0) {
        throw DegenerateModelError("subgap window contains a single voltage");
    }
    SubgapFit fit;
    fit.points = vs.size();
    fit.slope_nA_per_mV = svi / svv;
    fit.intercept_nA = mean_i - fit.slope_nA_per_mV * mean_v;
    if (!(fit.slope_nA_per_mV > 0.0)) {
        throw DegenerateModelError("subgap slope is not positive; no finite R_subgap");
    }
    double rss = 0.0;
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const double r = is[k] - (fit.intercept_nA + fit.slope_nA_per_mV * vs[k]);
        rss += r * r;
    }
    const double slope_se = std::sqrt(rss / (n - 2.0) / svv);
    // mV / nA = MOhm
    fit.resistance_MOhm = 1.0 / fit.slope_nA_per_mV;
    fit.resistance_std_error_MOhm = slope_se / (fit.slope_nA_per_mV * fit.slope_nA_per_mV);
    return fit;
}

double dynes_gamma_estimate(double normal_resistance_kOhm, double subgap_resistance_MOhm) {
    if (!(normal_resistance_kOhm > 0.0) || !(subgap_resistance_MOhm > 0.0)) {
        throw ParameterError("resistances must be positive");
    }
    return normal_resistance_kOhm / (subgap_resistance_MOhm * 1e3);
}

}  // namespace junctionlab::tunneling
