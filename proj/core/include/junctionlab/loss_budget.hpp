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

#include <span>
#include <string>
#include <vector>

namespace junctionlab::loss {

/// Relative permittivity used for AlOx when none is given.
inline constexpr double kDefaultBarrierPermittivity = 9.8;

/// eps0 * eps_r * area / thickness in fF (area in nm^2, thickness in nm).
double parallel_plate_capacitance_fF(double area_nm2, double thickness_nm,
                                     double eps_r = kDefaultBarrierPermittivity);

/// Capacitance per um^2 of a barrier of the given thickness.
double areal_capacitance_fF_per_um2(double thickness_nm,
                                    double eps_r = kDefaultBarrierPermittivity);

/// eps_r that gives `fF_per_um2` for a barrier of the given thickness.
double permittivity_for_areal_capacitance(double fF_per_um2, double thickness_nm);

struct JunctionGeometry {
    double lateral_nm{};
    double barrier_thickness_nm{};
    double sidewall_thickness_nm{};
    double electrode_thickness_nm{};

    void validate() const;
};

/// 600 nm square junction, 1.5 nm barrier, 2 nm sidewall oxide, 100 nm electrode.
JunctionGeometry reference_geometry();

double barrier_capacitance_fF(const JunctionGeometry& g,
                              double eps_r = kDefaultBarrierPermittivity);

/// Two sidewalls of height electrode_thickness along the junction edge.
double sidewall_capacitance_fF(const JunctionGeometry& g,
                               double eps_r = kDefaultBarrierPermittivity);

/// Barrier over sidewall capacitance; independent of eps_r.
double barrier_sidewall_ratio(const JunctionGeometry& g);

/// p_J = C_J / (2 C_S): the two junctions sit in series across the shunt.
double junction_participation(double junction_fF, double shunt_fF);

struct LossContribution {
    std::string name;
    double participation{};
    double tan_delta{};

    [[nodiscard]] double product() const { return participation * tan_delta; }
    void validate() const;
};

struct LossTerm {
    std::string name;
    double participation{};
    double tan_delta{};
    double inverse_q{};
};

struct LossBudgetReport {
    std::vector<LossTerm> terms;  // input order
    double total_inverse_q{};
    double participation_sum{};
    double target_inverse_q{};
    double margin{};  // target - total; negative when over budget
    bool within_target{};
    double implied_q{};  // 1 / total, infinite for a lossless budget
};

/// Sums p * tan(delta) over the contributions (summed in ascending order, so the
/// total does not depend on input order) and compares with target_inverse_q.
/// Rejects empty input and participation sums above 1.
LossBudgetReport loss_budget(std::span<const LossContribution> contributions,
                             double target_inverse_q);

/// Largest loss tangent of a region with participation p consistent with 1/Q.
double effective_loss_tangent_bound(double inverse_q, double participation);

/// L_J = (Phi0 / 2 pi)^2 / (h E_J), nH for E_J in GHz.
double josephson_inductance_nH(double josephson_GHz);

/// Sum of the junction inductances of a series chain.
double series_josephson_inductance_nH(std::span<const double> josephson_GHz);

/// sqrt(L / C) in ohm for L in nH and C in fF.
double characteristic_impedance_ohm(double inductance_nH, double capacitance_fF);

/// Effective capacitance that, with two 40 GHz junctions in series, gives
/// a characteristic impedance near 320 ohm.
inline constexpr double kReferenceEffectiveCapacitance_fF = 80.0;

struct SubgapQBound {
    double q_bound{};
    std::string note;
};

/// Q <= R_subgap / Z_c. The note records that quasiparticle-free operation
/// below the gap energy can make the bound irrelevant.
SubgapQBound subgap_q_limit(double subgap_resistance_MOhm, double impedance_ohm);

}  // namespace junctionlab::loss
