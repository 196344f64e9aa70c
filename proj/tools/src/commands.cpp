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

#include "workbench/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "junctionlab/coherence_fits.hpp"
#include "junctionlab/errors.hpp"
#include "junctionlab/loss_budget.hpp"
#include "workbench/csv.hpp"

namespace workbench {

namespace fs = std::filesystem;
namespace circuit = junctionlab::circuit;
namespace tun = junctionlab::tunneling;
namespace fit = junctionlab::fit;
namespace loss = junctionlab::loss;

void OutputSink::plot(const std::string& name, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
    const std::string file = fmt::format("{}_{}.csv", command_, name);
    write_csv(directory_ / file, header, columns);
    report_.outputs.push_back(file);
}

circuit::DoubleJunctionParams CircuitOptions::params() const {
    if (!josephson1_GHz || !josephson2_GHz) {
        throw junctionlab::InputError("--ej1-GHz and --ej2-GHz are required");
    }
    circuit::DoubleJunctionParams p{shunt_fF, junction1_fF, junction2_fF, gate1_fF,
                                    gate2_fF, *josephson1_GHz, *josephson2_GHz};
    if (!(scale > 0.0)) throw junctionlab::ParameterError("--scale must be positive");
    if (scale != 1.0) p = p.scaled_shunt_and_josephson(scale);
    p.validate();
    return p;
}

namespace {

circuit::TruncationSpec truncation_for(const CircuitOptions& c, const RunConfig& cfg) {
    circuit::TruncationSpec t = cfg.truncation;
    if (c.n_max) t.n_max = *c.n_max;
    t.validate();
    return t;
}

Json circuit_json(const circuit::DoubleJunctionParams& p) {
    return {{"shunt_fF", p.shunt_fF},           {"junction1_fF", p.junction1_fF},
            {"junction2_fF", p.junction2_fF},   {"gate1_fF", p.gate1_fF},
            {"gate2_fF", p.gate2_fF},           {"josephson1_GHz", p.josephson1_GHz},
            {"josephson2_GHz", p.josephson2_GHz}};
}

Json dispersion_json(const circuit::DispersionResult& d) {
    return {{"peak_to_peak_Hz", d.peak_to_peak_Hz},
            {"check_peak_to_peak_Hz", d.check_peak_to_peak_Hz},
            {"precision_floor_Hz", d.precision_floor_Hz},
            {"argmin", {{"ng_minus", d.argmin.minus}, {"ng_plus", d.argmin.plus}}},
            {"argmax", {{"ng_minus", d.argmax.minus}, {"ng_plus", d.argmax.plus}}},
            {"grid_points", d.grid_points}};
}

void write_dispersion_plot(const circuit::DispersionResult& d, OutputSink& sink) {
    std::vector<double> a, b;
    for (const auto& g : d.gates) {
        a.push_back(g.minus);
        b.push_back(g.plus);
    }
    sink.plot("dispersion", {"ng_minus", "ng_plus", "f_ge_GHz"}, {a, b, d.f_ge_GHz});
}

Json fit_json(const fit::FitReport& r) {
    Json params = Json::object();
    for (std::size_t i = 0; i < r.names.size(); ++i) {
        Json entry = {{"value", r.params[i]}};
        entry["std_error"] = r.std_errors.empty() ? Json(nullptr) : Json(r.std_errors[i]);
        params[r.names[i]] = entry;
    }
    return {{"converged", r.converged},
            {"iterations", r.iterations},
            {"residual_norm", r.residual_norm},
            {"parameters", params}};
}

void note_fit(const fit::FitReport& r, Report& report) {
    report.warn_all(r.warnings);
    if (!r.converged) report.status = RunStatus::not_converged;
}

std::vector<double> voltage_grid(const IvOptions& o) {
    if (!(o.v_step_mV > 0.0) || !(o.v_max_mV > o.v_min_mV)) {
        throw junctionlab::ParameterError("voltage grid needs v-max > v-min and v-step > 0");
    }
    const auto count = static_cast<std::size_t>(std::llround((o.v_max_mV - o.v_min_mV) / o.v_step_mV)) + 1;
    if (count > 2'000'000) throw junctionlab::ParameterError("voltage grid has too many points");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = o.v_min_mV + static_cast<double>(i) * o.v_step_mV;
    return v;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

junctionlab::SampledTrace load_single(const std::string& input, TraceKind kind, Report& report) {
    const fs::path path(input);
    LoadedCsv loaded = load_trace_csv(path, kind);
    report.add_input(path);
    report.warn_all(loaded.warnings);
    return std::move(*loaded.trace);
}

}  // namespace

void simulate_spectrum(const SpectrumOptions& o, const RunConfig& cfg, Report& report,
                       OutputSink& sink) {
    const auto params = o.circuit.params();
    const auto trunc = truncation_for(o.circuit, cfg);
    if (o.levels < 3) throw junctionlab::ParameterError("--levels must be at least 3");
    if (!o.sweep.empty() && o.sweep != "ng") {
        throw junctionlab::ParameterError("--sweep accepts only 'ng'");
    }
    const circuit::GateCharge gate{o.ng_minus, o.ng_plus};
    const auto result = circuit::simulate_spectrum(params, gate, trunc, o.levels);
    const auto& s = result.spectrum;

    Json& r = report.results;
    r["circuit"] = circuit_json(params);
    r["gate_charge"] = {{"ng_minus", gate.minus}, {"ng_plus", gate.plus}};
    r["levels_GHz"] = s.levels_GHz;
    Json from_ground = Json::array();
    for (std::size_t k = 1; k < s.levels_GHz.size(); ++k) from_ground.push_back(s.levels_GHz[k]);
    r["transitions_GHz"] = {{"from_ground", from_ground},
                            {"f_ge", s.f_ge},
                            {"f_ef", s.f_ef},
                            {"f_gf", s.f_gf}};
    r["anharmonicity_GHz"] = s.anharmonicity;
    r["convergence"] = {{"n_max_requested", trunc.n_max},
                        {"n_max_used", result.n_max_used},
                        {"dimension", (2 * result.n_max_used + 1) * (2 * result.n_max_used + 1)},
                        {"truncation_shift_Hz", result.truncation_shift_Hz},
                        {"tolerance_Hz", trunc.convergence_tol_Hz}};
    try {
        const auto eff = circuit::effective_transmon_mapping(params);
        r["effective_transmon"] = {{"josephson_GHz", eff.josephson_GHz},
                                   {"charging_GHz", eff.charging_GHz},
                                   {"frequency_estimate_GHz", eff.frequency_estimate_GHz},
                                   {"ratio", eff.ratio()},
                                   {"conventional_ratio", eff.conventional_ratio}};
    } catch (const junctionlab::UnsupportedRegimeError& e) {
        report.warn(std::string("effective transmon mapping skipped: ") + e.what());
    }

    std::vector<double> index;
    for (std::size_t k = 0; k < s.levels_GHz.size(); ++k) index.push_back(static_cast<double>(k));
    sink.plot("levels", {"level", "energy_GHz"}, {index, s.levels_GHz});

    if (o.sweep == "ng") {
        const auto d = circuit::charge_dispersion(params, trunc, o.grid);
        r["dispersion"] = dispersion_json(d);
        report.warn_all(d.warnings);
        write_dispersion_plot(d, sink);
    }
}

void sweep_dispersion(const DispersionOptions& o, const RunConfig& cfg, Report& report,
                      OutputSink& sink) {
    const auto params = o.circuit.params();
    const auto trunc = truncation_for(o.circuit, cfg);
    const auto d = circuit::charge_dispersion(params, trunc, o.grid);
    report.results["circuit"] = circuit_json(params);
    report.results["n_max"] = trunc.n_max;
    report.results["dispersion"] = dispersion_json(d);
    report.warn_all(d.warnings);
    write_dispersion_plot(d, sink);
}

void simulate_iv(const IvOptions& o, const RunConfig&, Report& report, OutputSink& sink) {
    tun::JunctionDC junction{o.normal_resistance_kOhm,
                             {o.left_gap_meV, o.left_gamma, o.left_tc_K},
                             {o.right_gap_meV, o.right_gamma, o.right_tc_K}};
    junction.validate();
    const auto grid = voltage_grid(o);
    const auto iv = tun::iv_curve(junction, o.temperature_K, grid);

    Json& r = report.results;
    r["junction"] = {{"normal_resistance_kOhm", o.normal_resistance_kOhm},
                     {"left", {{"gap_meV", o.left_gap_meV},
                               {"dynes_gamma", o.left_gamma},
                               {"critical_temperature_K", o.left_tc_K}}},
                     {"right", {{"gap_meV", o.right_gap_meV},
                                {"dynes_gamma", o.right_gamma},
                                {"critical_temperature_K", o.right_tc_K}}}};
    r["temperature_K"] = o.temperature_K;
    r["gaps_at_temperature_meV"] = {{"left", tun::bcs_gap(junction.left, o.temperature_K)},
                                    {"right", tun::bcs_gap(junction.right, o.temperature_K)}};
    r["points"] = iv.size();
    r["onset"] = {{"fraction_of_ohmic", o.onset_fraction},
                  {"voltage_mV", optional_json(tun::current_onset_mV(iv, o.normal_resistance_kOhm,
                                                                     o.onset_fraction))}};

    const tun::VoltageWindow window{o.subgap_lo_mV, o.subgap_hi_mV};
    try {
        const auto sub = tun::subgap_linear_fit(iv, window);
        r["subgap"] = {{"window_mV", {window.lo_mV, window.hi_mV}},
                       {"resistance_MOhm", sub.resistance_MOhm},
                       {"resistance_std_error_MOhm", sub.resistance_std_error_MOhm},
                       {"points", sub.points},
                       {"dynes_gamma_estimate",
                        tun::dynes_gamma_estimate(o.normal_resistance_kOhm, sub.resistance_MOhm)}};
    } catch (const junctionlab::InsufficientDataError& e) {
        report.warn(std::string("subgap fit skipped: ") + e.what());
    } catch (const junctionlab::DegenerateModelError& e) {
        report.warn(std::string("subgap fit skipped: ") + e.what());
    }

    const std::vector<double> temperature(iv.size(), o.temperature_K);
    const std::vector<double> x(iv.x().begin(), iv.x().end());
    const std::vector<double> y(iv.y().begin(), iv.y().end());
    sink.plot("iv", {"voltage_mV", "current_nA", "temperature_K"}, {x, y, temperature});
    if (iv.size() >= 5) {
        const auto didv = tun::numerical_didv(iv);
        sink.plot("didv", {"voltage_mV", "conductance_per_kohm"},
                  {x, std::vector<double>(didv.y().begin(), didv.y().end())});
    }
}

void extract_gaps(const GapOptions& o, const RunConfig&, Report& report, OutputSink& sink) {
    const auto files = expand_inputs(o.inputs);
    if (files.empty()) throw junctionlab::InputError("no input CSV files");
    std::vector<junctionlab::SampledTrace> traces;
    for (const auto& f : files) {
        LoadedCsv loaded = load_trace_csv(f, TraceKind::iv);
        if (!loaded.trace->temperature_K()) {
            throw ParseError(f, 0, "IV file has no temperature_K column");
        }
        report.add_input(f);
        report.warn_all(loaded.warnings);
        traces.push_back(std::move(*loaded.trace));
    }
    tun::GapExtractionOptions opts;
    opts.peaks.sum_window = {o.sum_lo_mV, std::numeric_limits<double>::infinity()};
    opts.peaks.difference_window = {o.difference_lo_mV, o.difference_hi_mV};
    opts.peaks.min_prominence_fraction = o.min_prominence;
    opts.plateau_temperature_K = o.plateau_temperature_K;
    opts.plateau_max_temperature_K = o.plateau_max_temperature_K;
    const auto result = tun::extract_gaps_vs_temperature(traces, opts);

    Json rows = Json::array();
    std::vector<double> t, nb, al, sum, diff;
    for (const auto& row : result.rows) {
        rows.push_back({{"temperature_K", row.temperature_K},
                        {"delta_Nb_meV", row.delta_Nb_meV},
                        {"delta_Al_meV", row.delta_Al_meV},
                        {"sum_peak_mV", row.sum_peak_mV},
                        {"difference_peak_mV", optional_json(row.difference_peak_mV)},
                        {"plateau_rule", row.plateau_rule}});
        t.push_back(row.temperature_K);
        nb.push_back(row.delta_Nb_meV);
        al.push_back(row.delta_Al_meV);
        sum.push_back(row.sum_peak_mV);
        diff.push_back(row.difference_peak_mV.value_or(std::numeric_limits<double>::quiet_NaN()));
    }
    report.results["rows"] = rows;
    report.results["plateau_delta_Nb_meV"] = result.plateau_delta_Nb_meV;
    report.warn_all(result.warnings);
    sink.plot("gaps",
              {"temperature_K", "delta_Nb_meV", "delta_Al_meV", "sum_peak_mV", "difference_peak_mV"},
              {t, nb, al, sum, diff});
}

void fit_decay(DecayModel model, const DecayOptions& o, const RunConfig& cfg, Report& report,
               OutputSink& sink) {
    const auto trace = load_single(o.input, TraceKind::decay, report);
    fit::FitReport r;
    fit::ParametricModel curve;
    switch (model) {
    case DecayModel::t1:
        r = fit::fit_t1(trace, cfg.fit);
        curve = fit::exponential_decay_model("T1_us");
        break;
    case DecayModel::echo:
        r = fit::fit_echo(trace, cfg.fit);
        curve = fit::exponential_decay_model("T2_echo_us");
        break;
    case DecayModel::ramsey:
        r = fit::fit_ramsey(trace, cfg.fit);
        curve = r.names.size() == 5 ? fit::ramsey_model() : fit::exponential_decay_model("T2_star_us");
        break;
    }
    note_fit(r, report);
    report.results["fit"] = fit_json(r);
    report.results["points"] = trace.size();
    if (model == DecayModel::ramsey) report.results["oscillation_resolved"] = r.names.size() == 5;
    if (o.f_ge_GHz) {
        if (model != DecayModel::t1) {
            throw junctionlab::ParameterError("--f-ge-GHz applies to T1 fits only");
        }
        report.results["quality_factor"] = {{"f_ge_GHz", *o.f_ge_GHz},
                                            {"Q", fit::quality_factor(*o.f_ge_GHz, r.params[1])}};
    }

    const std::vector<double> x(trace.x().begin(), trace.x().end());
    const std::vector<double> y(trace.y().begin(), trace.y().end());
    sink.plot("data", {"delay_us", "population"}, {x, y});
    std::vector<double> mx, my;
    constexpr int kCurvePoints = 400;
    for (int i = 0; i < kCurvePoints; ++i) {
        const double t = x.front() + (x.back() - x.front()) * i / (kCurvePoints - 1);
        mx.push_back(t);
        my.push_back(curve.value(t, r.params));
    }
    sink.plot("model", {"delay_us", "population"}, {mx, my});
}

void fit_ra(const RaOptions& o, const RunConfig& cfg, Report& report, OutputSink& sink) {
    const fs::path path(o.input);
    LoadedCsv loaded = load_trace_csv(path, TraceKind::prober);
    report.add_input(path);
    report.warn_all(loaded.warnings);
    const auto r = fit::fit_resistance_area(loaded.points, cfg.fit);
    note_fit(r, report);
    report.results["fit"] = fit_json(r);
    report.results["points"] = loaded.points.size();
    Json predictions = Json::array();
    for (double d : o.predict_d_nm) {
        predictions.push_back(
            {{"d_nm", d}, {"resistance_ohm", fit::resistance_from_area(r.params[0], r.params[1], d)}});
    }
    report.results["predictions"] = predictions;

    std::string data = "die_x,die_y,d_nm,resistance_ohm\n";
    for (const auto& p : loaded.points) {
        data += fmt::format("{},{},{:.17g},{:.17g}\n", p.die_x ? std::to_string(*p.die_x) : "",
                            p.die_y ? std::to_string(*p.die_y) : "", p.d_nm, p.resistance_ohm);
    }
    const std::string file = "fit-ra_data.csv";
    write_file_atomic(sink.directory() / file, data);
    report.outputs.push_back(file);

    const auto [lo, hi] = std::minmax_element(
        loaded.points.begin(), loaded.points.end(),
        [](const auto& a, const auto& b) { return a.d_nm < b.d_nm; });
    std::vector<double> d, rr;
    constexpr int kCurvePoints = 200;
    for (int i = 0; i < kCurvePoints; ++i) {
        const double x = lo->d_nm + (hi->d_nm - lo->d_nm) * i / (kCurvePoints - 1);
        d.push_back(x);
        rr.push_back(fit::resistance_from_area(r.params[0], r.params[1], x));
    }
    sink.plot("model", {"d_nm", "resistance_ohm"}, {d, rr});
}

void freq_trend(const TrendOptions& o, const RunConfig&, Report& report, OutputSink& sink) {
    const fs::path path(o.input);
    LoadedCsv loaded = load_trace_csv(path, TraceKind::trend);
    report.add_input(path);
    const auto t = fit::frequency_size_trend(loaded.trend, o.band_GHz);
    note_fit(t.fit, report);
    report.warn_all(t.warnings);
    Json groups = Json::array();
    for (const auto& g : t.groups) {
        groups.push_back({{"group", g.group},
                          {"mean_residual_GHz", g.mean_residual_GHz},
                          {"count", g.count},
                          {"outside_band", g.outside_band}});
    }
    report.results["fit"] = fit_json(t.fit);
    report.results["residuals_GHz"] = t.residuals_GHz;
    report.results["max_abs_residual_GHz"] = t.max_abs_residual_GHz;
    report.results["band_GHz"] = t.band_GHz;
    report.results["outside_band"] = t.outside_band;
    report.results["groups"] = groups;

    std::vector<double> d, f;
    for (const auto& p : loaded.trend) {
        d.push_back(p.d_nm);
        f.push_back(p.f_ge_GHz);
    }
    sink.plot("residuals", {"d_nm", "f_ge_GHz", "residual_GHz"}, {d, f, t.residuals_GHz});
}

namespace {

loss::LossContribution parse_term(const std::string& spec) {
    const auto a = spec.find(':');
    const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
    if (a == std::string::npos || b == std::string::npos || spec.find(':', b + 1) != std::string::npos) {
        throw junctionlab::InputError("--term expects name:participation:tan_delta, got '" + spec + "'");
    }
    try {
        std::size_t used1 = 0, used2 = 0;
        const std::string p = spec.substr(a + 1, b - a - 1);
        const std::string t = spec.substr(b + 1);
        loss::LossContribution c{spec.substr(0, a), std::stod(p, &used1), std::stod(t, &used2)};
        if (used1 != p.size() || used2 != t.size()) throw std::invalid_argument("trailing text");
        return c;
    } catch (const std::logic_error&) {
        throw junctionlab::InputError("--term has a malformed number: '" + spec + "'");
    }
}

}  // namespace

void loss_budget(const LossOptions& o, const RunConfig&, Report& report, OutputSink& sink) {
    std::vector<loss::LossContribution> terms;
    std::optional<double> target = o.target_inverse_q;
    if (!o.input.empty()) {
        const fs::path path(o.input);
        std::ifstream in(path);
        if (!in) throw junctionlab::InputError("cannot open " + path.string());
        Json doc;
        try {
            doc = Json::parse(in);
            if (!target && doc.contains("target_inverse_q")) {
                target = doc.at("target_inverse_q").get<double>();
            }
            for (const auto& c : doc.at("contributions")) {
                terms.push_back({c.at("name").get<std::string>(), c.at("participation").get<double>(),
                                 c.at("tan_delta").get<double>()});
            }
        } catch (const nlohmann::json::exception& e) {
            throw junctionlab::InputError(path.string() + ": " + e.what());
        }
        report.add_input(path);
    }
    for (const auto& spec : o.terms) terms.push_back(parse_term(spec));

    Json& r = report.results;
    bool anything = false;
    if (!terms.empty()) {
        if (!target) throw junctionlab::InputError("--target-inverse-q is required with loss terms");
        const auto b = loss::loss_budget(terms, *target);
        Json rows = Json::array();
        std::vector<double> index, values;
        for (std::size_t i = 0; i < b.terms.size(); ++i) {
            const auto& t = b.terms[i];
            rows.push_back({{"name", t.name},
                            {"participation", t.participation},
                            {"tan_delta", t.tan_delta},
                            {"inverse_q", t.inverse_q}});
            index.push_back(static_cast<double>(i));
            values.push_back(t.inverse_q);
        }
        r["budget"] = {{"terms", rows},
                       {"total_inverse_q", b.total_inverse_q},
                       {"participation_sum", b.participation_sum},
                       {"target_inverse_q", b.target_inverse_q},
                       {"margin", b.margin},
                       {"within_target", b.within_target},
                       {"implied_q", b.implied_q}};
        if (!b.within_target) {
            report.warn(fmt::format("loss budget total {:.3g} exceeds the 1/Q target {:.3g}",
                                    b.total_inverse_q, b.target_inverse_q));
        }
        sink.plot("terms", {"term", "inverse_q"}, {index, values});
        anything = true;
    } else if (o.target_inverse_q && !o.inverse_q) {
        throw junctionlab::InputError("--target-inverse-q given without any loss terms");
    }

    if (o.junction_fF || o.shunt_fF) {
        if (!o.junction_fF || !o.shunt_fF) {
            throw junctionlab::InputError("--junction-fF and --shunt-fF must be given together");
        }
        const double p = loss::junction_participation(*o.junction_fF, *o.shunt_fF);
        Json j = {{"junction_fF", *o.junction_fF}, {"shunt_fF", *o.shunt_fF}, {"participation", p}};
        if (o.inverse_q) {
            j["inverse_q"] = *o.inverse_q;
            j["tan_delta_bound"] = loss::effective_loss_tangent_bound(*o.inverse_q, p);
        }
        r["junction"] = j;
        anything = true;
    } else if (o.inverse_q) {
        throw junctionlab::InputError("--inverse-q needs --junction-fF and --shunt-fF");
    }

    if (!o.geometry_nm.empty()) {
        if (o.geometry_nm.size() != 4) {
            throw junctionlab::InputError(
                "--geometry-nm expects lateral,barrier,sidewall,electrode thicknesses");
        }
        const loss::JunctionGeometry g{o.geometry_nm[0], o.geometry_nm[1], o.geometry_nm[2],
                                       o.geometry_nm[3]};
        r["geometry"] = {{"lateral_nm", g.lateral_nm},
                         {"barrier_thickness_nm", g.barrier_thickness_nm},
                         {"sidewall_thickness_nm", g.sidewall_thickness_nm},
                         {"electrode_thickness_nm", g.electrode_thickness_nm},
                         {"eps_r", o.eps_r},
                         {"barrier_capacitance_fF", loss::barrier_capacitance_fF(g, o.eps_r)},
                         {"sidewall_capacitance_fF", loss::sidewall_capacitance_fF(g, o.eps_r)},
                         {"barrier_sidewall_ratio", loss::barrier_sidewall_ratio(g)}};
        anything = true;
    }

    std::optional<double> impedance = o.impedance_ohm;
    if (!o.josephson_GHz.empty()) {
        const double l = loss::series_josephson_inductance_nH(o.josephson_GHz);
        Json j = {{"josephson_GHz", o.josephson_GHz}, {"series_inductance_nH", l}};
        if (o.effective_capacitance_fF) {
            const double z = loss::characteristic_impedance_ohm(l, *o.effective_capacitance_fF);
            j["effective_capacitance_fF"] = *o.effective_capacitance_fF;
            j["characteristic_impedance_ohm"] = z;
            if (!impedance) impedance = z;
        }
        r["inductance"] = j;
        anything = true;
    }
    if (o.subgap_MOhm) {
        if (!impedance) {
            throw junctionlab::InputError(
                "--subgap-MOhm needs --impedance-ohm or --ej-GHz with --ceff-fF");
        }
        const auto q = loss::subgap_q_limit(*o.subgap_MOhm, *impedance);
        r["subgap_bound"] = {{"subgap_MOhm", *o.subgap_MOhm},
                             {"impedance_ohm", *impedance},
                             {"q_bound", q.q_bound},
                             {"note", q.note}};
        anything = true;
    }
    if (!anything) throw junctionlab::InputError("loss-budget: nothing to compute; see --help");
}

}  // namespace workbench
