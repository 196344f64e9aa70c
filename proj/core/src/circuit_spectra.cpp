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

#include "junctionlab/circuit_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>

#include "junctionlab/errors.hpp"

namespace junctionlab::circuit {
namespace {

using constants::kChargingGHzfF;

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(std::string(name) + " must be positive, got " +
                             std::to_string(value));
    }
}

void require_non_negative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ParameterError(std::string(name) + " must be non-negative, got " +
                             std::to_string(value));
    }
}

double max_abs_row_sum(const Eigen::MatrixXd& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double ground_transition_GHz(const DoubleJunctionParams& params, const GateCharge& gate,
                             const TruncationSpec& trunc) {
    return eigenspectrum(build_charge_hamiltonian(params, gate, trunc), 3).f_ge;
}

}  // namespace

void DoubleJunctionParams::validate() const {
    require_positive(shunt_fF, "C_S");
    require_positive(junction1_fF, "C_J1");
    require_positive(junction2_fF, "C_J2");
    require_non_negative(gate1_fF, "C_g1");
    require_non_negative(gate2_fF, "C_g2");
    require_positive(josephson1_GHz, "E_J1");
    require_positive(josephson2_GHz, "E_J2");
}

DoubleJunctionParams DoubleJunctionParams::scaled_shunt_and_josephson(double factor) const {
    DoubleJunctionParams p = *this;
    p.shunt_fF *= factor;
    p.josephson1_GHz *= factor;
    p.josephson2_GHz *= factor;
    return p;
}

DoubleJunctionParams reference_double_junction() {
    return DoubleJunctionParams{.shunt_fF = 100.0,
                                .junction1_fF = 10.0,
                                .junction2_fF = 10.0,
                                .gate1_fF = kReferenceGateCapacitance_fF,
                                .gate2_fF = kReferenceGateCapacitance_fF,
                                .josephson1_GHz = 40.0,
                                .josephson2_GHz = 40.0};
}

void TruncationSpec::validate() const {
    if (n_max < 1) {
        throw ParameterError("n_max must be >= 1, got " + std::to_string(n_max));
    }
    if (!(convergence_tol_Hz > 0.0)) {
        throw ParameterError("convergence tolerance must be positive");
    }
}

void TransmonParams::validate() const {
    require_positive(josephson_GHz, "E_J");
    require_positive(charging_GHz, "E_C");
    if (!std::isfinite(gate_charge)) {
        throw ParameterError("gate charge must be finite");
    }
}

Spectrum Spectrum::from_levels(std::vector<double> levels_GHz) {
    if (levels_GHz.size() < 3) {
        throw ArityError("a spectrum needs at least 3 levels, got " +
                         std::to_string(levels_GHz.size()));
    }
    Spectrum s;
    s.levels_GHz = std::move(levels_GHz);
    const auto t = transitions(s);
    s.f_ge = t.f_ge;
    s.f_ef = t.f_ef;
    s.f_gf = t.f_gf;
    s.anharmonicity = t.anharmonicity;
    return s;
}

Transitions transitions(const Spectrum& spectrum) {
    const auto& l = spectrum.levels_GHz;
    if (l.size() < 3) {
        throw ArityError("transitions need at least 3 levels, got " + std::to_string(l.size()));
    }
    Transitions t;
    t.f_ge = l[1] - l[0];
    t.f_gf = l[2] - l[0];
    t.f_ef = l[2] - l[1];
    t.anharmonicity = t.f_ef - t.f_ge;
    return t;
}

Eigen::MatrixXd build_charge_hamiltonian(const DoubleJunctionParams& params,
                                         const GateCharge& gate,
                                         const TruncationSpec& trunc) {
    params.validate();
    trunc.validate();

    const int n_max = trunc.n_max;
    const int dim = trunc.dimension();
    const double e_sigma = 4.0 * kChargingGHzfF / params.sigma_capacitance_fF();
    const double e_delta = 4.0 * kChargingGHzfF / params.delta_capacitance_fF();
    const double hop1 = -0.5 * params.josephson1_GHz;
    const double hop2 = -0.5 * params.josephson2_GHz;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int n1 = -n_max; n1 <= n_max; ++n1) {
        for (int n2 = -n_max; n2 <= n_max; ++n2) {
            const int i = charge_index(n1, n2, n_max);
            const double minus = (n2 - n1) - gate.minus;
            const double plus = (n2 + n1) - gate.plus;
            h(i, i) = e_sigma * minus * minus + e_delta * plus * plus;
            if (n1 < n_max) {
                const int j = charge_index(n1 + 1, n2, n_max);
                h(i, j) = hop1;
                h(j, i) = hop1;
            }
            if (n2 < n_max) {
                const int j = charge_index(n1, n2 + 1, n_max);
                h(i, j) = hop2;
                h(j, i) = hop2;
            }
        }
    }
    return h;
}

Spectrum eigenspectrum(const Eigen::MatrixXd& hamiltonian, int k) {
    if (hamiltonian.rows() != hamiltonian.cols()) {
        throw ArityError("Hamiltonian must be square");
    }
    if (k < 3 || k > hamiltonian.rows()) {
        throw ArityError("requested " + std::to_string(k) + " levels from a dimension-" +
                         std::to_string(hamiltonian.rows()) + " Hamiltonian (need 3 <= k <= dim)");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("symmetric eigensolver did not converge (dimension " +
                             std::to_string(hamiltonian.rows()) + ", |H|_inf = " +
                             std::to_string(max_abs_row_sum(hamiltonian)) + " GHz)");
    }
    const Eigen::VectorXd& ev = solver.eigenvalues();
    std::vector<double> levels(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        levels[static_cast<std::size_t>(i)] = ev(i) - ev(0);
    }
    return Spectrum::from_levels(std::move(levels));
}

ConvergedSpectrum simulate_spectrum(const DoubleJunctionParams& params, const GateCharge& gate,
                                    const TruncationSpec& trunc, int levels) {
    trunc.validate();
    TruncationSpec current = trunc;
    for (;;) {
        TruncationSpec wider = current;
        wider.n_max += 4;
        Spectrum base = eigenspectrum(build_charge_hamiltonian(params, gate, current), levels);
        const double check = ground_transition_GHz(params, gate, wider);
        const double shift_Hz = std::abs(base.f_ge - check) * 1e9;
        if (shift_Hz < current.convergence_tol_Hz) {
            return ConvergedSpectrum{std::move(base), current.n_max, shift_Hz};
        }
        if (current.n_max >= kMaxAutoNMax) {
            throw ConvergenceError("f_ge not converged at n_max = " +
                                   std::to_string(current.n_max) + ": shift " +
                                   std::to_string(shift_Hz) + " Hz exceeds " +
                                   std::to_string(current.convergence_tol_Hz) + " Hz");
        }
        current.n_max = std::min(2 * current.n_max, kMaxAutoNMax);
    }
}

namespace {

struct GateSweep {
    std::vector<GateCharge> points;
    std::vector<double> f_ge_GHz;
};

GateSweep sweep_gate_grid(const DoubleJunctionParams& params, const TruncationSpec& trunc,
                          int grid_resolution) {
    GateSweep sweep;
    for (int a = 0; a < grid_resolution; ++a) {
        for (int b = 0; b < grid_resolution; ++b) {
            sweep.points.push_back(
                GateCharge{static_cast<double>(a) / (grid_resolution - 1),
                           static_cast<double>(b) / (grid_resolution - 1)});
        }
    }
    sweep.f_ge_GHz.assign(sweep.points.size(), 0.0);

    // Each grid point writes only its own slot; the reduction below runs in
    // index order so results do not depend on the thread count.
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, sweep.points.size());
    auto work = [&](std::size_t first) {
        for (std::size_t i = first; i < sweep.points.size(); i += workers) {
            sweep.f_ge_GHz[i] = ground_transition_GHz(params, sweep.points[i], trunc);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
    }
    return sweep;
}

}  // namespace

DispersionResult charge_dispersion(const DoubleJunctionParams& params, const TruncationSpec& trunc,
                                   int grid_resolution) {
    params.validate();
    trunc.validate();
    if (grid_resolution < 3) {
        throw ParameterError("grid_resolution must be >= 3, got " +
                             std::to_string(grid_resolution));
    }

    TruncationSpec wider = trunc;
    wider.n_max += 4;

    const GateSweep base = sweep_gate_grid(params, trunc, grid_resolution);
    const GateSweep check = sweep_gate_grid(params, wider, grid_resolution);

    DispersionResult result;
    result.grid_points = static_cast<int>(base.points.size());
    const auto [lo, hi] = std::minmax_element(base.f_ge_GHz.begin(), base.f_ge_GHz.end());
    result.peak_to_peak_Hz = (*hi - *lo) * 1e9;
    result.argmin = base.points[static_cast<std::size_t>(lo - base.f_ge_GHz.begin())];
    result.argmax = base.points[static_cast<std::size_t>(hi - base.f_ge_GHz.begin())];
    const auto [clo, chi] = std::minmax_element(check.f_ge_GHz.begin(), check.f_ge_GHz.end());
    result.check_peak_to_peak_Hz = (*chi - *clo) * 1e9;
    result.gates = base.points;
    result.f_ge_GHz = base.f_ge_GHz;

    // Backward-stable dense solvers give eigenvalue errors of order eps |H|;
    // use the wider (larger-norm) Hamiltonian at the worst gate corner.
    const Eigen::MatrixXd h_worst =
        build_charge_hamiltonian(params, GateCharge{1.0, 1.0}, wider);
    result.precision_floor_Hz =
        10.0 * std::numeric_limits<double>::epsilon() * max_abs_row_sum(h_worst) * 1e9;

    const double larger = std::max(result.peak_to_peak_Hz, result.check_peak_to_peak_Hz);
    const double resolvable = 100.0 * result.precision_floor_Hz;
    if (larger > resolvable &&
        std::abs(result.peak_to_peak_Hz - result.check_peak_to_peak_Hz) > 0.5 * larger) {
        throw ConvergenceError("charge dispersion not converged: " +
                               std::to_string(result.peak_to_peak_Hz) + " Hz at n_max = " +
                               std::to_string(trunc.n_max) + " vs " +
                               std::to_string(result.check_peak_to_peak_Hz) + " Hz at n_max = " +
                               std::to_string(wider.n_max));
    }
    if (result.peak_to_peak_Hz < resolvable) {
        result.warnings.push_back(
            "charge dispersion " + std::to_string(result.peak_to_peak_Hz) +
            " Hz is within 100x of the eigensolver precision floor (" +
            std::to_string(result.precision_floor_Hz) + " Hz)");
    }
    return result;
}

double PhaseWavefunction::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes) {
        sum += std::norm(a);
    }
    return sum * step() * step();
}

PhaseWavefunction phase_wavefunction(const DoubleJunctionParams& params, const GateCharge& gate,
                                     const TruncationSpec& trunc, int level_index,
                                     int points_per_axis) {
    if (points_per_axis < kMinWavefunctionGrid) {
        throw ResolutionError("wavefunction grid needs at least " +
                              std::to_string(kMinWavefunctionGrid) + " points per axis, got " +
                              std::to_string(points_per_axis));
    }
    const Eigen::MatrixXd h = build_charge_hamiltonian(params, gate, trunc);
    if (level_index < 0 || level_index >= h.rows()) {
        throw ArityError("level index " + std::to_string(level_index) + " out of range");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("symmetric eigensolver did not converge for wavefunction");
    }
    const Eigen::VectorXd coeffs = solver.eigenvectors().col(level_index);

    const int n_max = trunc.n_max;
    const int states = trunc.node_states();
    const int m = points_per_axis;

    PhaseWavefunction wf;
    wf.points_per_axis = m;
    wf.level_index = level_index;
    wf.energy_GHz = solver.eigenvalues()(level_index) - solver.eigenvalues()(0);
    wf.phase_axis.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        wf.phase_axis[static_cast<std::size_t>(i)] = -std::numbers::pi + i * wf.step();
    }

    // exp(i n phi) table, indexed [grid point][n + n_max].
    Eigen::MatrixXcd phases(m, states);
    for (int i = 0; i < m; ++i) {
        for (int n = -n_max; n <= n_max; ++n) {
            phases(i, n + n_max) = std::polar(1.0, n * wf.phase_axis[static_cast<std::size_t>(i)]);
        }
    }
    // Coefficients as a (n1, n2) matrix; psi = P * C * P^T / 2 pi.
    Eigen::MatrixXcd c(states, states);
    for (int n1 = -n_max; n1 <= n_max; ++n1) {
        for (int n2 = -n_max; n2 <= n_max; ++n2) {
            c(n1 + n_max, n2 + n_max) = coeffs(charge_index(n1, n2, n_max));
        }
    }
    const Eigen::MatrixXcd psi = phases * c * phases.transpose() / constants::kTwoPi;
    wf.amplitudes.resize(static_cast<std::size_t>(m) * m);
    for (int i1 = 0; i1 < m; ++i1) {
        for (int i2 = 0; i2 < m; ++i2) {
            wf.amplitudes[static_cast<std::size_t>(i1) * m + i2] = psi(i1, i2);
        }
    }
    return wf;
}

Spectrum transmon_spectrum(const TransmonParams& params, const TruncationSpec& trunc, int levels) {
    params.validate();
    trunc.validate();
    const int n_max = trunc.n_max;
    const int dim = trunc.node_states();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = -n_max; n <= n_max; ++n) {
        const int i = n + n_max;
        const double q = n - params.gate_charge;
        h(i, i) = 4.0 * params.charging_GHz * q * q;
        if (n < n_max) {
            h(i, i + 1) = -0.5 * params.josephson_GHz;
            h(i + 1, i) = -0.5 * params.josephson_GHz;
        }
    }
    return eigenspectrum(h, std::min(levels, dim));
}

EffectiveTransmon effective_transmon_mapping(const DoubleJunctionParams& params) {
    params.validate();
    const double mean = 0.5 * (params.josephson1_GHz + params.josephson2_GHz);
    if (std::abs(params.josephson1_GHz - params.josephson2_GHz) > 0.01 * mean) {
        throw UnsupportedRegimeError(
            "effective transmon mapping assumes identical junctions (E_J1 = " +
            std::to_string(params.josephson1_GHz) +
            " GHz, E_J2 = " + std::to_string(params.josephson2_GHz) + " GHz)");
    }
    const double shunt_charging = kChargingGHzfF / params.shunt_fF;
    EffectiveTransmon t;
    t.josephson_GHz = 2.0 * params.josephson1_GHz;
    t.charging_GHz = shunt_charging / 4.0;
    t.frequency_estimate_GHz = std::sqrt(8.0 * t.josephson_GHz * t.charging_GHz);
    // Same frequency with the full shunt charging energy needs 2 E_J1 = 4 E_J.
    t.conventional_ratio = (t.josephson_GHz / 4.0) / shunt_charging;
    return t;
}

namespace {

constexpr double kMinTransmonRatio = 10.0;

TruncationSpec inversion_truncation() { return TruncationSpec{.n_max = 30}; }

/// E_J giving the requested f_ge at fixed E_C (f_ge increases with E_J).
double matching_josephson(double f_ge_GHz, double charging_GHz) {
    auto residual = [&](double ej) {
        return transmon_spectrum({.josephson_GHz = ej, .charging_GHz = charging_GHz},
                                 inversion_truncation(), 3)
                   .f_ge -
               f_ge_GHz;
    };
    const double guess = (f_ge_GHz + charging_GHz) * (f_ge_GHz + charging_GHz) /
                         (8.0 * charging_GHz);
    double lo = 0.5 * guess;
    double hi = 2.0 * guess;
    for (int i = 0; i < 60 && residual(lo) > 0.0; ++i) lo *= 0.5;
    for (int i = 0; i < 60 && residual(hi) < 0.0; ++i) hi *= 2.0;
    boost::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        residual, lo, hi, boost::math::tools::eps_tolerance<double>(48), max_iter);
    return 0.5 * (a + b);
}

}  // namespace

InvertedTransmon invert_charging_energy(double f_ge_GHz, double anharmonicity_GHz) {
    if (!(f_ge_GHz > 0.0)) {
        throw ParameterError("f_ge must be positive");
    }
    if (!(anharmonicity_GHz < 0.0)) {
        throw ParameterError("transmon anharmonicity must be negative");
    }
    auto anharmonicity_at = [&](double ec) {
        const double ej = matching_josephson(f_ge_GHz, ec);
        return transmon_spectrum({.josephson_GHz = ej, .charging_GHz = ec},
                                 inversion_truncation(), 3)
            .anharmonicity;
    };
    auto ratio_at = [&](double ec) { return matching_josephson(f_ge_GHz, ec) / ec; };

    // |alpha| grows with E_C; alpha ~ -E_C deep in the regime.
    const double target = anharmonicity_GHz;
    double lo = 0.25 * std::abs(target);
    double hi = 2.0 * std::abs(target);
    if (ratio_at(hi) < kMinTransmonRatio) {
        // Shrink the upper bracket to the regime boundary E_J/E_C = 10.
        double a = lo;
        double b = hi;
        if (ratio_at(a) < kMinTransmonRatio) {
            throw InversionError("f_ge = " + std::to_string(f_ge_GHz) + " GHz with alpha = " +
                                 std::to_string(target) +
                                 " GHz lies outside the transmon regime E_J/E_C > 10");
        }
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (a + b);
            (ratio_at(mid) >= kMinTransmonRatio ? a : b) = mid;
        }
        hi = a;
    }
    const double alpha_lo = anharmonicity_at(lo) - target;
    const double alpha_hi = anharmonicity_at(hi) - target;
    if (alpha_lo * alpha_hi > 0.0) {
        throw InversionError("no E_C in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                             "] GHz brackets alpha = " + std::to_string(target) +
                             " GHz (residuals " + std::to_string(alpha_lo) + ", " +
                             std::to_string(alpha_hi) + " GHz)");
    }
    boost::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        [&](double ec) { return anharmonicity_at(ec) - target; }, lo, hi, alpha_lo, alpha_hi,
        boost::math::tools::eps_tolerance<double>(40), max_iter);
    const double ec = 0.5 * (a + b);
    const double ej = matching_josephson(f_ge_GHz, ec);
    const Spectrum s =
        transmon_spectrum({.josephson_GHz = ej, .charging_GHz = ec}, inversion_truncation(), 3);
    if (std::abs(s.f_ge - f_ge_GHz) > 1e-4 || std::abs(s.anharmonicity - target) > 1e-4) {
        throw InversionError("inversion residual above 0.1 MHz (f_ge " + std::to_string(s.f_ge) +
                             ", alpha " + std::to_string(s.anharmonicity) + ")");
    }
    return InvertedTransmon{ej, ec, s.f_ge, s.anharmonicity};
}

double total_capacitance_from_EC(double charging_GHz) {
    require_positive(charging_GHz, "E_C");
    return kChargingGHzfF / charging_GHz;
}

double junction_capacitance_from_EC(double charging_GHz, double shunt_fF) {
    require_non_negative(shunt_fF, "C_shunt");
    const double total = total_capacitance_from_EC(charging_GHz);
    const double junction = total - shunt_fF;
    if (junction < -1e-12 * total) {
        throw InconsistentInputError("shunt capacitance " + std::to_string(shunt_fF) +
                                     " fF exceeds the total " + std::to_string(total) +
                                     " fF implied by E_C = " + std::to_string(charging_GHz) +
                                     " GHz");
    }
    return std::max(junction, 0.0);
}

}  // namespace junctionlab::circuit
