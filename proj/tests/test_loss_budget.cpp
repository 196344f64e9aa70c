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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "junctionlab/errors.hpp"
#include "junctionlab/loss_budget.hpp"

namespace jl = junctionlab::loss;

namespace {
constexpr double kEps0 = 8.8541878128e-12;  // F/m
}

TEST(Capacitance, ParallelPlate) {
    EXPECT_NEAR(jl::parallel_plate_capacitance_fF(600.0 * 600.0, 1.5, 1.0),
                kEps0 * 3.6e-13 / 1.5e-9 * 1e15, 1e-9);
    EXPECT_NEAR(jl::parallel_plate_capacitance_fF(600.0 * 600.0, 1.5, 1.0), 2.125, 1e-3);
    const double c = jl::parallel_plate_capacitance_fF(1e5, 1.5);
    EXPECT_NEAR(jl::parallel_plate_capacitance_fF(1e5, 3.0), c / 2, 1e-12 * c);
    EXPECT_THROW(jl::parallel_plate_capacitance_fF(1e5, 0.0), junctionlab::ParameterError);
    EXPECT_THROW(jl::parallel_plate_capacitance_fF(-1.0, 1.0), junctionlab::ParameterError);
}

TEST(Capacitance, ArealTargetPermittivity) {
    const double eps = jl::permittivity_for_areal_capacitance(40.0, 1.5);
    EXPECT_NEAR(jl::areal_capacitance_fF_per_um2(1.5, eps), 40.0, 1e-9);
    EXPECT_NEAR(jl::parallel_plate_capacitance_fF(510.0 * 510.0, 1.5, eps), 10.4, 0.1);
}

TEST(Geometry, ReferenceRatio) {
    EXPECT_NEAR(jl::barrier_sidewall_ratio(jl::reference_geometry()), 4.0, 1e-12);
    auto g = jl::reference_geometry();
    g.sidewall_thickness_nm = 1e12;
    EXPECT_GT(jl::barrier_sidewall_ratio(g), 1e10);
    g.lateral_nm = 0.0;
    EXPECT_THROW(jl::barrier_sidewall_ratio(g), junctionlab::ParameterError);
}

TEST(Participation, Values) {
    EXPECT_NEAR(jl::junction_participation(10.0, 100.0), 0.05, 1e-15);
    EXPECT_EQ(jl::junction_participation(0.0, 100.0), 0.0);
    EXPECT_NEAR(jl::junction_participation(7.0, 100.0), 0.035, 1e-15);
    EXPECT_THROW(jl::junction_participation(-1.0, 100.0), junctionlab::ParameterError);
    EXPECT_THROW(jl::junction_participation(1.0, 0.0), junctionlab::ParameterError);
}

TEST(Budget, SwapsReferenceFailsTighterTarget) {
    const std::vector<jl::LossContribution> swaps{{"SWAPS", 1e-4, 1e-2}};
    const auto r = jl::loss_budget(swaps, 1e-7);
    EXPECT_NEAR(r.total_inverse_q, 1e-6, 1e-20);
    EXPECT_FALSE(r.within_target);
    EXPECT_LT(r.margin, 0.0);
    EXPECT_NEAR(r.implied_q, 1e6, 1e-6);
    EXPECT_TRUE(jl::loss_budget(swaps, 2e-6).within_target);
}

TEST(Budget, Rejections) {
    EXPECT_THROW(jl::loss_budget({}, 1e-6), junctionlab::ParameterError);
    const std::vector<jl::LossContribution> over{{"a", 0.7, 1e-6}, {"b", 0.5, 1e-6}};
    EXPECT_THROW(jl::loss_budget(over, 1e-6), junctionlab::ParameterError);
    const std::vector<jl::LossContribution> negative{{"a", 0.1, -1e-6}};
    EXPECT_THROW(jl::loss_budget(negative, 1e-6), junctionlab::ParameterError);
}

TEST(Budget, LosslessImpliesInfiniteQ) {
    const std::vector<jl::LossContribution> none{{"vacuum", 0.5, 0.0}};
    EXPECT_TRUE(std::isinf(jl::loss_budget(none, 1e-6).implied_q));
}

TEST(Budget, EffectiveTangentBound) {
    EXPECT_NEAR(jl::effective_loss_tangent_bound(1e-6, 0.05), 2e-5, 1e-20);
    EXPECT_THROW(jl::effective_loss_tangent_bound(1e-6, 0.0), junctionlab::ParameterError);
}

TEST(Inductance, JosephsonValues) {
    EXPECT_NEAR(jl::josephson_inductance_nH(40.0), 4.086, 2e-3);
    EXPECT_NEAR(jl::josephson_inductance_nH(80.0), jl::josephson_inductance_nH(40.0) / 2, 1e-12);
    const std::vector<double> pair{40.0, 40.0};
    EXPECT_NEAR(jl::series_josephson_inductance_nH(pair), 8.17, 5e-3);
    EXPECT_THROW(jl::series_josephson_inductance_nH({}), junctionlab::ParameterError);
}

TEST(Impedance, Values) {
    EXPECT_NEAR(jl::characteristic_impedance_ohm(8.2, 80.0), 320.0, 1.0);
    // L = 1 nH and C = 1 nF are numerically equal in SI units of 1e-9.
    EXPECT_NEAR(jl::characteristic_impedance_ohm(1.0, 1e6), 1.0, 1e-12);
    EXPECT_NEAR(jl::characteristic_impedance_ohm(8.2, 320.0),
                jl::characteristic_impedance_ohm(8.2, 80.0) / 2, 1e-12);
}

TEST(SubgapBound, Values) {
    EXPECT_NEAR(jl::subgap_q_limit(2.5, 320.0).q_bound, 7812.5, 1e-9);
    EXPECT_NEAR(jl::subgap_q_limit(3.5, 320.0).q_bound, 1.09e4, 50.0);
    EXPECT_GT(jl::subgap_q_limit(1e12, 320.0).q_bound, 1e12);
    EXPECT_FALSE(jl::subgap_q_limit(2.5, 320.0).note.empty());
}

// ---------------------------------------------------------------------------
// Properties

TEST(LossRatioProperty, IndependentOfPermittivityAndScale) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> len(50.0, 2000.0), thin(0.5, 5.0), eps(1.0, 20.0),
        k(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        jl::JunctionGeometry g{len(rng), thin(rng), thin(rng), len(rng) / 5};
        const double e1 = eps(rng), e2 = eps(rng);
        const double r1 = jl::barrier_capacitance_fF(g, e1) / jl::sidewall_capacitance_fF(g, e1);
        const double r2 = jl::barrier_capacitance_fF(g, e2) / jl::sidewall_capacitance_fF(g, e2);
        EXPECT_NEAR(r1, r2, 1e-12 * r1);
        EXPECT_NEAR(r1, jl::barrier_sidewall_ratio(g), 1e-12 * r1);
        const double s = k(rng);
        auto scaled = g;
        scaled.lateral_nm *= s;
        scaled.electrode_thickness_nm *= s;
        EXPECT_NEAR(jl::barrier_sidewall_ratio(scaled), r1, 1e-12 * r1);
    }
}

TEST(LossBudgetProperty, PermutationInvariantAndAdditive) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> p(0.0, 0.1), tan(0.0, 1e-3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<jl::LossContribution> c;
        for (int i = 0; i < 8; ++i) c.push_back({"t" + std::to_string(i), p(rng), tan(rng)});
        const auto ref = jl::loss_budget(c, 1e-6);
        double sum = 0.0;
        for (const auto& x : c) sum += jl::loss_budget(std::span(&x, 1), 1e-6).total_inverse_q;
        EXPECT_NEAR(ref.total_inverse_q, sum, 1e-15 * sum);
        for (int k = 0; k < 5; ++k) {
            std::shuffle(c.begin(), c.end(), rng);
            EXPECT_EQ(jl::loss_budget(c, 1e-6).total_inverse_q, ref.total_inverse_q);
        }
    }
}

TEST(LossUnitsProperty, FemtofaradAndAttofaradPathsAgree) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> a(1e3, 1e7), t(0.5, 5.0), eps(1.0, 20.0), l(0.5, 50.0),
        c(1.0, 500.0);
    for (int i = 0; i < 200; ++i) {
        const double area = a(rng), thick = t(rng), e = eps(rng);
        const double attofarad = kEps0 * e * (area * 1e-18) / (thick * 1e-9) * 1e18;
        const double ff = jl::parallel_plate_capacitance_fF(area, thick, e);
        EXPECT_NEAR(ff * 1e3, attofarad, 1e-9 * attofarad);
        const double ind = l(rng), cap = c(rng);
        const double z = jl::characteristic_impedance_ohm(ind, cap);
        EXPECT_NEAR(z, std::sqrt(ind * 1e-9 / (cap * 1e3 * 1e-18)), 1e-9 * z);
    }
}
