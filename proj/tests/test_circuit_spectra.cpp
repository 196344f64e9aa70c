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

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "junctionlab/circuit_spectra.hpp"
#include "junctionlab/errors.hpp"
#include "oracles/sum_difference_basis.hpp"

namespace jc = junctionlab::circuit;
using junctionlab::constants::kChargingGHzfF;

namespace {

oracle::Circuit to_oracle(const jc::DoubleJunctionParams& p) {
    return {p.shunt_fF, p.junction1_fF, p.junction2_fF, p.gate1_fF,
            p.gate2_fF, p.josephson1_GHz, p.josephson2_GHz};
}

jc::DoubleJunctionParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> shunt(40.0, 120.0), cj(3.0, 15.0), cg(0.0, 0.5),
        ej(5.0, 45.0);
    return {shunt(rng), cj(rng), cj(rng), cg(rng), cg(rng), ej(rng), ej(rng)};
}

// Charge-regime circuits converge at small n_max even for gate charges of a few units.
jc::DoubleJunctionParams compact_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> shunt(5.0, 20.0), cj(3.0, 10.0), cg(0.0, 0.5),
        ej(2.0, 15.0);
    return {shunt(rng), cj(rng), cj(rng), cg(rng), cg(rng), ej(rng), ej(rng)};
}

std::vector<double> levels_at(const jc::DoubleJunctionParams& p, jc::GateCharge g, int n_max,
                              int k = 5) {
    const auto h = jc::build_charge_hamiltonian(p, g, jc::TruncationSpec{n_max, 1e3});
    return jc::eigenspectrum(h, k).levels_GHz;
}

}  // namespace

TEST(CircuitSpectra, ReferenceLevels) {
    const auto r = jc::simulate_spectrum(jc::reference_double_junction(), {}, {});
    const double expected[] = {5.165, 10.276, 15.331, 20.331, 23.436};
    ASSERT_GE(r.spectrum.levels_GHz.size(), 6u);
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(r.spectrum.levels_GHz[i + 1], expected[i], 5e-3) << "level " << i + 1;
    }
    EXPECT_NEAR(r.spectrum.anharmonicity, -0.054, 2e-3);
    EXPECT_LT(r.truncation_shift_Hz, 1e3);
    EXPECT_EQ(r.n_max_used, 15);
}

TEST(CircuitSpectra, ScaledVariantLevels) {
    const auto p = jc::reference_double_junction().scaled_shunt_and_josephson(0.55);
    const auto s = jc::simulate_spectrum(p, {}, {}).spectrum;
    EXPECT_NEAR(s.f_ge, 4.94, 0.03);
    EXPECT_NEAR(s.anharmonicity, -0.102, 3e-3);
    EXPECT_NEAR(s.levels_GHz[4], 16.957, 0.02);
}

TEST(CircuitSpectra, AgreesWithSumDifferenceOracle) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 4; ++trial) {
        const auto p = random_params(rng);
        const jc::GateCharge g{0.13 * trial, 0.37 - 0.05 * trial};
        const auto lib = levels_at(p, g, 3, 6);
        const auto ref = oracle::sum_difference_levels(to_oracle(p), g.minus, g.plus, 3, 6);
        for (std::size_t i = 0; i < lib.size(); ++i) EXPECT_NEAR(lib[i], ref[i], 1e-9);
    }
}

TEST(CircuitSpectra, ChargeIndexIsRowMajorWithN2Fastest) {
    EXPECT_EQ(jc::charge_index(-2, -2, 2), 0);
    EXPECT_EQ(jc::charge_index(-2, -1, 2), 1);
    EXPECT_EQ(jc::charge_index(-1, -2, 2), 5);
    EXPECT_EQ(jc::charge_index(2, 2, 2), 24);
}

TEST(CircuitSpectra, HamiltonianDiagonalIsChargingEnergy) {
    const auto p = jc::reference_double_junction();
    const jc::TruncationSpec t{2, 1e3};
    const auto h = jc::build_charge_hamiltonian(p, {0.2, -0.1}, t);
    const double es = kChargingGHzfF / p.sigma_capacitance_fF();
    const double ed = kChargingGHzfF / p.delta_capacitance_fF();
    const int n1 = 1, n2 = -2;
    const double nm = n2 - n1 - 0.2, np = n2 + n1 + 0.1;
    const int i = jc::charge_index(n1, n2, 2);
    EXPECT_NEAR(h(i, i), 4 * es * nm * nm + 4 * ed * np * np, 1e-12);
    EXPECT_DOUBLE_EQ(h(i, jc::charge_index(n1 + 1, n2, 2)), -p.josephson1_GHz / 2);
    EXPECT_DOUBLE_EQ(h(i, jc::charge_index(n1, n2 + 1, 2)), -p.josephson2_GHz / 2);
    EXPECT_DOUBLE_EQ(h(i, jc::charge_index(n1 + 1, n2 + 1, 2)), 0.0);
}

TEST(CircuitSpectra, ValidationErrors) {
    auto p = jc::reference_double_junction();
    p.shunt_fF = -1;
    EXPECT_THROW(p.validate(), junctionlab::ParameterError);
    p = jc::reference_double_junction();
    p.gate1_fF = -0.1;
    EXPECT_THROW(p.validate(), junctionlab::ParameterError);
    EXPECT_THROW((jc::TruncationSpec{0, 1e3}.validate()), junctionlab::ParameterError);
    EXPECT_THROW(jc::Spectrum::from_levels({0.0, 1.0}), junctionlab::ArityError);
}

TEST(CircuitSpectra, AutoTruncationGrowsWhenUnconverged) {
    const auto r = jc::simulate_spectrum(jc::reference_double_junction(), {}, {2, 1e3}, 4);
    EXPECT_GT(r.n_max_used, 2);
    EXPECT_LT(r.truncation_shift_Hz, 1e3);
}

TEST(Transmon, ChargeLimitMatchesParabola) {
    const double ec = 0.3, ng = 0.25;
    const auto s = jc::transmon_spectrum({1e-9, ec, ng}, {10, 1e3}, 4);
    // Lowest charge states for ng = 0.25: n = 0, 1, -1, 2.
    const double e0 = 4 * ec * 0.0625;
    EXPECT_NEAR(s.levels_GHz[1], 4 * ec * 0.5625 - e0, 1e-8);
    EXPECT_NEAR(s.levels_GHz[2], 4 * ec * 1.5625 - e0, 1e-8);
    EXPECT_NEAR(s.levels_GHz[3], 4 * ec * 3.0625 - e0, 1e-8);
}

TEST(Transmon, DeepTransmonAsymptotics) {
    const double ej = 25.0, ec = 0.2;
    const auto s = jc::transmon_spectrum({ej, ec, 0.0}, {20, 1e3}, 4);
    EXPECT_NEAR(s.f_ge, std::sqrt(8 * ej * ec) - ec, 0.01);
    EXPECT_NEAR(s.anharmonicity, -ec, 0.02);
}

TEST(EffectiveTransmon, ReferenceEstimate) {
    const auto e = jc::effective_transmon_mapping(jc::reference_double_junction());
    EXPECT_NEAR(e.frequency_estimate_GHz, 5.57, 0.01);
    EXPECT_DOUBLE_EQ(e.josephson_GHz, 80.0);
    auto p = jc::reference_double_junction();
    p.josephson2_GHz = 42.0;
    EXPECT_THROW(jc::effective_transmon_mapping(p), junctionlab::UnsupportedRegimeError);
}

TEST(Inversion, RoundTripThroughForwardModel) {
    const double ej = 14.0, ec = 0.17;
    const auto s = jc::transmon_spectrum({ej, ec, 0.0}, {30, 1e3}, 3);
    const auto inv = jc::invert_charging_energy(s.f_ge, s.anharmonicity);
    EXPECT_NEAR(inv.charging_GHz, ec, 1e-5);
    EXPECT_NEAR(inv.josephson_GHz, ej, 1e-3);
}

TEST(Inversion, DeviceTableRows) {
    EXPECT_NEAR(jc::invert_charging_energy(4.389, -0.176).charging_GHz, 0.162, 0.003);
    EXPECT_NEAR(jc::invert_charging_energy(4.294, -0.220).charging_GHz, 0.196, 0.003);
    const auto row = jc::invert_charging_energy(4.848, -0.208);
    EXPECT_NEAR(row.f_ge_GHz, 4.848, 1e-4);
    EXPECT_NEAR(row.anharmonicity_GHz, -0.208, 1e-4);
}

TEST(Inversion, RejectsPositiveAnharmonicity) {
    EXPECT_THROW(jc::invert_charging_energy(5.0, 0.1), junctionlab::Error);
}

TEST(Capacitance, FromChargingEnergy) {
    EXPECT_NEAR(jc::total_capacitance_from_EC(0.2), kChargingGHzfF / 0.2, 1e-12);
    const double ec = kChargingGHzfF / 122.0;
    EXPECT_NEAR(jc::junction_capacitance_from_EC(ec, 100.0), 22.0, 1e-9);
    EXPECT_THROW(jc::junction_capacitance_from_EC(0.5, 100.0), junctionlab::InconsistentInputError);
}

TEST(Wavefunction, NormalizedAndLocalized) {
    const auto w = jc::phase_wavefunction(jc::reference_double_junction(), {}, {8, 1e3}, 0, 48);
    EXPECT_NEAR(w.norm(), 1.0, 1e-9);
    // Ground state concentrates at phi1 = phi2 = 0 (index points/2 on [-pi, pi)).
    const int mid = w.points_per_axis / 2;
    EXPECT_GT(w.density(mid, mid), 10.0 * w.density(0, 0));
    EXPECT_THROW(jc::phase_wavefunction(jc::reference_double_junction(), {}, {8, 1e3}, 0, 16),
                 junctionlab::ResolutionError);
    EXPECT_THROW(jc::phase_wavefunction(jc::reference_double_junction(), {}, {2, 1e3}, 100, 32),
                 junctionlab::ArityError);
}

TEST(Dispersion, ScaledVariantIsKilohertzScale) {
    const auto p = jc::reference_double_junction().scaled_shunt_and_josephson(0.55);
    const auto d = jc::charge_dispersion(p, {12, 1e3}, 5);
    EXPECT_NEAR(d.peak_to_peak_Hz, 4.3e3, 0.3e3);
    EXPECT_NEAR(d.check_peak_to_peak_Hz, d.peak_to_peak_Hz, 0.05 * d.peak_to_peak_Hz);
    EXPECT_EQ(d.grid_points, 25);
    EXPECT_EQ(d.f_ge_GHz.size(), 25u);
    EXPECT_THROW(jc::charge_dispersion(p, {12, 1e3}, 2), junctionlab::ParameterError);
}

// ---------------------------------------------------------------------------
// Properties

TEST(CircuitHermiticityProperty, HamiltonianIsSymmetric) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ng(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = jc::build_charge_hamiltonian(random_params(rng), {ng(rng), ng(rng)}, {4, 1e3});
        EXPECT_EQ((h - h.transpose()).cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(CircuitGatePeriodicityProperty, LatticeShiftsAndParity) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ng(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = compact_params(rng);
        const double a = ng(rng), b = ng(rng);
        const auto base = levels_at(p, {a, b}, 10);
        const std::pair<double, double> images[] = {{a + 1, b + 1}, {a + 1, b - 1}, {a - 2, b},
                                                    {a, b + 2}, {-a, -b}};
        for (const auto& [x, y] : images) {
            const auto shifted = levels_at(p, {x, y}, 10);
            for (std::size_t i = 0; i < base.size(); ++i) {
                EXPECT_NEAR(shifted[i], base[i], 1e-7) << "image (" << x << ", " << y << ")";
            }
        }
    }
}

TEST(CircuitGatePeriodicityProperty, ReflectionForIdenticalJunctions) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ng(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = compact_params(rng);
        p.junction2_fF = p.junction1_fF;
        p.gate2_fF = p.gate1_fF;
        p.josephson2_GHz = p.josephson1_GHz;
        const double a = ng(rng), b = ng(rng);
        const auto base = levels_at(p, {a, b}, 10);
        const auto mirrored = levels_at(p, {-a, b}, 10);
        for (std::size_t i = 0; i < base.size(); ++i) EXPECT_NEAR(mirrored[i], base[i], 1e-7);
    }
}

TEST(CircuitGatePeriodicityProperty, SingleComponentShiftChangesParitySector) {
    // (1, 0) maps n- and n+ onto opposite parities, so it is not a symmetry.
    const auto p = jc::reference_double_junction().scaled_shunt_and_josephson(0.55);
    const auto a = levels_at(p, {0.3, 0.1}, 10, 3);
    const auto b = levels_at(p, {1.3, 0.1}, 10, 3);
    EXPECT_GT(std::abs(a[1] - b[1]), 1e-7);
}

TEST(CircuitTransitionProperty, TwoPhotonIdentity) {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> ng(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = jc::eigenspectrum(
            jc::build_charge_hamiltonian(random_params(rng), {ng(rng), ng(rng)}, {4, 1e3}), 4);
        EXPECT_NEAR(s.f_gf, s.f_ge + s.f_ef, 1e-12 * s.f_gf);
        EXPECT_DOUBLE_EQ(s.anharmonicity, s.f_ef - s.f_ge);
        EXPECT_EQ(s.levels_GHz[0], 0.0);
        EXPECT_TRUE(std::is_sorted(s.levels_GHz.begin(), s.levels_GHz.end()));
    }
}

TEST(CircuitTruncationProperty, GroundEnergyIsVariational) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p = random_params(rng);
        double previous = std::numeric_limits<double>::infinity();
        for (int n = 2; n <= 7; ++n) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
                jc::build_charge_hamiltonian(p, {0.2, 0.4}, {n, 1e3}), Eigen::EigenvaluesOnly);
            const double e0 = solver.eigenvalues()(0);
            EXPECT_LE(e0, previous + 1e-9);
            previous = e0;
        }
    }
}

TEST(TransmonGateProperty, PeriodicAndEven) {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> ng(-1.0, 1.0), ej(1.0, 30.0), ec(0.1, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double j = ej(rng), c = ec(rng), g = ng(rng);
        const auto a = jc::transmon_spectrum({j, c, g}, {15, 1e3}, 4);
        const auto b = jc::transmon_spectrum({j, c, g + 1.0}, {15, 1e3}, 4);
        const auto m = jc::transmon_spectrum({j, c, -g}, {15, 1e3}, 4);
        for (int i = 0; i < 4; ++i) {
            EXPECT_NEAR(a.levels_GHz[i], b.levels_GHz[i], 1e-9);
            EXPECT_NEAR(a.levels_GHz[i], m.levels_GHz[i], 1e-9);
        }
    }
}
