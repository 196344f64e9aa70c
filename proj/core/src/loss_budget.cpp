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

#include "junctionlab/loss_budget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "junctionlab/constants.hpp"
#include "junctionlab/errors.hpp"

namespace junctionlab::loss {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || std::isnan(v)) {
        throw ParameterError(fmt::format("{} must be positive, got {}", what, v));
    }
}

}  // namespace

double parallel_plate_capacitance_fF(double area_nm2, double thickness_nm, double eps_r) {
    require_positive(area_nm2, "area");
    require_positive(thickness_nm, "thickness");
    require_positive(eps_r, "relative permittivity");
    // nm^2 / nm = 1e-9 m; F -> fF is 1e15.
    return constants::kVacuumPermittivity * eps_r * (area_nm2 / thickness_nm) * 1e6;
}

double areal_capacitance_fF_per_um2(double thickness_nm, double eps_r) {
    return parallel_plate_capacitance_fF(1e6, thickness_nm, eps_r);
}

double permittivity_for_areal_capacitance(double fF_per_um2, double thickness_nm) {
    require_positive(fF_per_um2, "areal capacitance");
    return fF_per_um2 / areal_capacitance_fF_per_um2(thickness_nm, 1.0);
}

void JunctionGeometry::validate() const {
    require_positive(lateral_nm, "junction lateral size");
    require_positive(barrier_thickness_nm, "barrier thickness");
    require_positive(sidewall_thickness_nm, "sidewall thickness");
    require_positive(electrode_thickness_nm, "electrode thickness");
}

JunctionGeometry reference_geometry() { return {600.0, 1.5, 2.0, 100.0}; }

double barrier_capacitance_fF(const JunctionGeometry& g, double eps_r) {
    g.validate();
    return parallel_plate_capacitance_fF(g.lateral_nm * g.lateral_nm, g.barrier_thickness_nm,
                                         eps_r);
}

double sidewall_capacitance_fF(const JunctionGeometry& g, double eps_r) {
    g.validate();
    return parallel_plate_capacitance_fF(2.0 * g.lateral_nm * g.electrode_thickness_nm,
                                         g.sidewall_thickness_nm, eps_r);
}

double barrier_sidewall_ratio(const JunctionGeometry& g) {
    g.validate();
    return (g.lateral_nm * g.lateral_nm / g.barrier_thickness_nm) /
           (2.0 * g.lateral_nm * g.electrode_thickness_nm / g.sidewall_thickness_nm);
}

double junction_participation(double junction_fF, double shunt_fF) {
    if (!(junction_fF >= 0.0)) {
        throw ParameterError(fmt::format("junction capacitance must be >= 0, got {}", junction_fF));
    }
    require_positive(shunt_fF, "shunt capacitance");
    return junction_fF / (2.0 * shunt_fF);
}

void LossContribution::validate() const {
    if (!(participation >= 0.0 && participation <= 1.0)) {
        throw ParameterError(
            fmt::format("participation of '{}' must lie in [0, 1], got {}", name, participation));
    }
    if (!(tan_delta >= 0.0) || !std::isfinite(tan_delta)) {
        throw ParameterError(fmt::format("loss tangent of '{}' must be >= 0, got {}", name, tan_delta));
    }
}

LossBudgetReport loss_budget(std::span<const LossContribution> contributions,
                             double target_inverse_q) {
    if (contributions.empty()) throw ParameterError("loss budget needs at least one contribution");
    require_positive(target_inverse_q, "target 1/Q");
    constexpr double kParticipationTolerance = 1e-9;

    LossBudgetReport report;
    report.target_inverse_q = target_inverse_q;
    std::vector<double> products;
    std::vector<double> participations;
    for (const auto& c : contributions) {
        c.validate();
        report.terms.push_back({c.name, c.participation, c.tan_delta, c.product()});
        products.push_back(c.product());
        participations.push_back(c.participation);
    }
    std::sort(products.begin(), products.end());
    std::sort(participations.begin(), participations.end());
    for (double p : products) report.total_inverse_q += p;
    for (double p : participations) report.participation_sum += p;
    if (report.participation_sum > 1.0 + kParticipationTolerance) {
        throw ParameterError(fmt::format("participations sum to {:.6g} > 1", report.participation_sum));
    }
    report.margin = target_inverse_q - report.total_inverse_q;
    report.within_target = report.total_inverse_q <= target_inverse_q;
    report.implied_q = report.total_inverse_q > 0.0 ? 1.0 / report.total_inverse_q
                                                    : std::numeric_limits<double>::infinity();
    return report;
}

double effective_loss_tangent_bound(double inverse_q, double participation) {
    require_positive(inverse_q, "1/Q");
    require_positive(participation, "participation");
    return inverse_q / participation;
}

double josephson_inductance_nH(double josephson_GHz) {
    require_positive(josephson_GHz, "E_J");
    const double reduced_flux = constants::kFluxQuantum / constants::kTwoPi;
    return reduced_flux * reduced_flux / (constants::kPlanck * josephson_GHz * 1e9) * 1e9;
}

double series_josephson_inductance_nH(std::span<const double> josephson_GHz) {
    if (josephson_GHz.empty()) throw ParameterError("series chain needs at least one junction");
    double total = 0.0;
    for (double e : josephson_GHz) total += josephson_inductance_nH(e);
    return total;
}

double characteristic_impedance_ohm(double inductance_nH, double capacitance_fF) {
    require_positive(inductance_nH, "inductance");
    require_positive(capacitance_fF, "capacitance");
    return std::sqrt(inductance_nH * 1e-9 / (capacitance_fF * 1e-15));
}

SubgapQBound subgap_q_limit(double subgap_resistance_MOhm, double impedance_ohm) {
    require_positive(subgap_resistance_MOhm, "subgap resistance");
    require_positive(impedance_ohm, "characteristic impedance");
    return {subgap_resistance_MOhm * 1e6 / impedance_ohm,
            "classical dissipation bound; at qubit energies far below the gap there may be no "
            "quasiparticle states to tunnel into, in which case the bound does not apply"};
}

}  // namespace junctionlab::loss
