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

// Charge-basis quantization of the double-junction (transmon-like) qubit and
// of the single-junction transmon.
//
// Energies are frequencies (E/h) in GHz, capacitances in fF. A capacitance C
// corresponds to the charging energy E_C = e^2/2hC = kChargingGHzfF / C. With
// integer Cooper-pair numbers n the charging term is (2e)^2/2C * n^2, i.e.
// 4 E_C n^2, the usual transmon prefactor. For the double-junction circuit this
// gives
//
//   H = 4 E_Sigma (n- - ng-)^2 + 4 E_Delta (n+ - ng+)^2
//       - E_J1 cos(phi1) - E_J2 cos(phi2)
//
// with n+- = n2 +- n1, E_Sigma = e^2/2hC_Sigma, E_Delta = e^2/2hC_Delta,
// C_Delta = C_J1 + C_J2 + C_g1 + C_g2 and C_Sigma = 4 C_S + C_Delta. For
// identical junctions the Josephson part equals -2 E_J1 cos(phi+) cos(phi-).

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "junctionlab/constants.hpp"

namespace junctionlab::circuit {

/// Gate capacitance whose charging energy is 100 GHz. Together with C_S = 100 fF,
/// C_J = 10 fF and E_J = 40 GHz it reproduces the published double-junction
/// spectrum including the first phi+ excitation.
inline constexpr double kReferenceGateCapacitance_fF = constants::kChargingGHzfF / 100.0;

/// Double-junction qubit circuit: shunt C_S across the two series junctions,
/// gate capacitances from the outer nodes.
struct DoubleJunctionParams {
    double shunt_fF{};
    double junction1_fF{};
    double junction2_fF{};
    double gate1_fF{0.0};
    double gate2_fF{0.0};
    double josephson1_GHz{};
    double josephson2_GHz{};

    /// C_Delta = C_J1 + C_J2 + C_g1 + C_g2.
    [[nodiscard]] double delta_capacitance_fF() const {
        return junction1_fF + junction2_fF + gate1_fF + gate2_fF;
    }
    /// C_Sigma = 4 C_S + C_Delta.
    [[nodiscard]] double sigma_capacitance_fF() const {
        return 4.0 * shunt_fF + delta_capacitance_fF();
    }

    /// Throws ParameterError unless C_S, C_J > 0, C_g >= 0 and E_J > 0.
    void validate() const;

    /// Copy with C_S, E_J1 and E_J2 multiplied by `factor`.
    [[nodiscard]] DoubleJunctionParams scaled_shunt_and_josephson(double factor) const;
};

/// C_S = 100 fF, C_J = 10 fF, E_J = 40 GHz, C_g = kReferenceGateCapacitance_fF.
DoubleJunctionParams reference_double_junction();

/// Offset charges in Cooper-pair units. Spectra repeat under shifts by (1, 1)
/// and (1, -1), i.e. integer shifts of either node charge, and are even under
/// (ng-, ng+) -> (-ng-, -ng+).
struct GateCharge {
    double minus{0.0};
    double plus{0.0};
};

struct TruncationSpec {
    int n_max{15};
    double convergence_tol_Hz{1e3};

    [[nodiscard]] int node_states() const { return 2 * n_max + 1; }
    /// Two-node Hamiltonian dimension (2 n_max + 1)^2.
    [[nodiscard]] int dimension() const { return node_states() * node_states(); }
    void validate() const;
};

/// Eigen-frequencies relative to the ground state, ascending, levels[0] == 0.
struct Spectrum {
    std::vector<double> levels_GHz;
    double f_ge{};
    double f_ef{};
    double f_gf{};
    double anharmonicity{};

    /// Builds the derived transitions from sorted, ground-shifted levels.
    static Spectrum from_levels(std::vector<double> levels_GHz);
};

struct Transitions {
    double f_ge{};
    double f_ef{};
    double f_gf{};
    double anharmonicity{};
};

struct TransmonParams {
    double josephson_GHz{};
    double charging_GHz{};
    double gate_charge{0.0};

    void validate() const;
};

/// Basis index of the charge state (n1, n2); n2 runs fastest.
[[nodiscard]] inline int charge_index(int n1, int n2, int n_max) {
    return (n1 + n_max) * (2 * n_max + 1) + (n2 + n_max);
}

Eigen::MatrixXd build_charge_hamiltonian(const DoubleJunctionParams& params,
                                         const GateCharge& gate,
                                         const TruncationSpec& trunc);

/// The k lowest eigenvalues of a real symmetric H, shifted to the ground state.
Spectrum eigenspectrum(const Eigen::MatrixXd& hamiltonian, int k);

Transitions transitions(const Spectrum& spectrum);

/// Spectrum with a truncation-convergence record.
struct ConvergedSpectrum {
    Spectrum spectrum;
    int n_max_used{};
    /// |f_ge(n_max) - f_ge(n_max + 4)| at the accepted truncation.
    double truncation_shift_Hz{};
};

/// Diagonalizes at trunc.n_max and n_max + 4, doubling n_max until the f_ge
/// shift is below trunc.convergence_tol_Hz. Throws ConvergenceError past
/// kMaxAutoNMax.
ConvergedSpectrum simulate_spectrum(const DoubleJunctionParams& params, const GateCharge& gate,
                                    const TruncationSpec& trunc, int levels = 6);

inline constexpr int kMaxAutoNMax = 32;

struct DispersionResult {
    double peak_to_peak_Hz{};
    /// Same sweep at n_max + 4.
    double check_peak_to_peak_Hz{};
    /// Estimated absolute eigenvalue precision of the dense solver.
    double precision_floor_Hz{};
    GateCharge argmin{};
    GateCharge argmax{};
    int grid_points{};
    /// Sweep samples at the requested truncation.
    std::vector<GateCharge> gates;
    std::vector<double> f_ge_GHz;
    std::vector<std::string> warnings;
};

/// Peak-to-peak f_ge over the gate grid linspace(0, 1, grid_resolution)^2.
/// [0, 1]^2 is a fundamental domain for identical junctions.
DispersionResult charge_dispersion(const DoubleJunctionParams& params, const TruncationSpec& trunc,
                                   int grid_resolution = 5);

/// Eigenfunction psi(phi1, phi2) = sum c_{n1 n2} exp(i n1 phi1 + i n2 phi2) / 2 pi
/// sampled on [-pi, pi)^2; normalized so that sum |psi|^2 dphi1 dphi2 = 1.
struct PhaseWavefunction {
    int points_per_axis{};
    int level_index{};
    double energy_GHz{};  ///< relative to the ground state
    std::vector<double> phase_axis;
    std::vector<std::complex<double>> amplitudes;  ///< row-major, phi1 major

    [[nodiscard]] double step() const { return constants::kTwoPi / points_per_axis; }
    [[nodiscard]] std::complex<double> at(int i1, int i2) const {
        return amplitudes[static_cast<std::size_t>(i1) * points_per_axis + i2];
    }
    [[nodiscard]] double density(int i1, int i2) const { return std::norm(at(i1, i2)); }
    /// Sum of |psi|^2 dphi1 dphi2 over the grid.
    [[nodiscard]] double norm() const;
};

inline constexpr int kMinWavefunctionGrid = 32;

PhaseWavefunction phase_wavefunction(const DoubleJunctionParams& params, const GateCharge& gate,
                                     const TruncationSpec& trunc, int level_index,
                                     int points_per_axis = 64);

/// 1-D Cooper-pair box: H = 4 E_C (n - n_g)^2 - E_J cos(phi), n in [-n_max, n_max].
Spectrum transmon_spectrum(const TransmonParams& params, const TruncationSpec& trunc,
                           int levels = 4);

struct EffectiveTransmon {
    double josephson_GHz{};  ///< 2 E_J1
    double charging_GHz{};   ///< (e^2/2hC_S) / 4
    double frequency_estimate_GHz{};  ///< sqrt(8 E_J E_C)
    /// E_J/E_C of a single-junction transmon with the same C_S and comparable
    /// frequency (E_J = E_J1/2, E_C = e^2/2hC_S).
    double conventional_ratio{};

    [[nodiscard]] double ratio() const { return josephson_GHz / charging_GHz; }
};

/// phi+ ~ 0 mapping onto a transmon. Requires |E_J1 - E_J2| within 1%.
EffectiveTransmon effective_transmon_mapping(const DoubleJunctionParams& params);

struct InvertedTransmon {
    double josephson_GHz{};
    double charging_GHz{};
    double f_ge_GHz{};
    double anharmonicity_GHz{};
};

/// Finds (E_J, E_C) in the transmon regime E_J/E_C > 10 whose transmon_spectrum
/// reproduces f_ge and the anharmonicity (< 0) to better than 0.1 MHz.
InvertedTransmon invert_charging_energy(double f_ge_GHz, double anharmonicity_GHz);

/// C_total = (e^2/2h) / E_C.
double total_capacitance_from_EC(double charging_GHz);

/// C_J = C_total - C_shunt. Throws InconsistentInputError when negative.
double junction_capacitance_from_EC(double charging_GHz, double shunt_fF);

}  // namespace junctionlab::circuit
