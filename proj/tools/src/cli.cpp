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

#include "workbench/cli.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "junctionlab/errors.hpp"
#include "workbench/commands.hpp"
#include "workbench/config.hpp"
#include "workbench/report.hpp"

namespace workbench {

namespace fs = std::filesystem;

namespace {

std::optional<fs::path> find_config_flag(const std::vector<std::string>& args) {
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return fs::path(args[i + 1]);
        if (args[i].rfind("--config=", 0) == 0) return fs::path(args[i].substr(9));
    }
    return std::nullopt;
}

std::string json_to_option_string(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return fmt::format("{:.17g}", v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        std::string joined;
        for (const auto& item : v) {
            if (item.is_array() || item.is_object()) break;
            joined += (joined.empty() ? "" : ",") + json_to_option_string(item);
        }
        return joined;
    }
    throw ConfigError("unsupported value type in commands block");
}

Json typed(const std::string& s) {
    long long whole = 0;
    const auto [iptr, iec] = std::from_chars(s.data(), s.data() + s.size(), whole);
    if (!s.empty() && iec == std::errc() && iptr == s.data() + s.size()) return whole;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (!s.empty() && ec == std::errc() && ptr == s.data() + s.size()) return value;
    return s;
}

std::string option_key(const CLI::Option* option) {
    const auto& longs = option->get_lnames();
    return longs.empty() ? option->get_name(true) : longs.front();
}

/// Effective option values for the report, typed where numeric.
Json effective_parameters(const CLI::App* sub) {
    Json params = Json::object();
    for (const CLI::Option* option : sub->get_options()) {
        if (option == sub->get_help_ptr()) continue;
        const std::string key = option_key(option);
        std::vector<std::string> values = option->results();
        if (values.empty() && !option->get_default_str().empty()) {
            values = CLI::detail::split(option->get_default_str(), ',');
        }
        if (values.empty()) {
            params[key] = nullptr;
        } else if (option->get_expected_max() > 1 || values.size() > 1) {
            Json arr = Json::array();
            for (const auto& v : values) arr.push_back(typed(v));
            params[key] = arr;
        } else {
            params[key] = typed(values.front());
        }
    }
    return params;
}

void apply_config_defaults(CLI::App& app, const RunConfig& cfg) {
    for (const auto& [name, block] : cfg.commands.items()) {
        CLI::App* sub = nullptr;
        try {
            sub = app.get_subcommand(name);
        } catch (const CLI::OptionNotFound&) {
            throw ConfigError("config names unknown subcommand '" + name + "'");
        }
        if (!block.is_object()) throw ConfigError("commands." + name + " must be an object");
        for (const auto& [key, value] : block.items()) {
            CLI::Option* opt = sub->get_option_no_throw("--" + key);
            if (opt == nullptr) opt = sub->get_option_no_throw(key);
            if (opt == nullptr) {
                throw ConfigError(fmt::format("config: subcommand {} has no option '{}'", name, key));
            }
            try {
                opt->default_val(json_to_option_string(value));
            } catch (const CLI::Error& e) {
                throw ConfigError(fmt::format("config: commands.{}.{}: {}", name, key, e.what()));
            }
        }
    }
}

std::string default_text(double v) { return fmt::format("{:.17g}", v); }
std::string default_text(int v) { return std::to_string(v); }
std::string default_text(const std::string& v) { return v; }
template <typename T>
std::string default_text(const std::optional<T>& v) {
    return v ? default_text(*v) : std::string();
}
template <typename T>
std::string default_text(const std::vector<T>& v) {
    std::string joined;
    for (const auto& item : v) joined += (joined.empty() ? "" : ",") + default_text(item);
    return joined;
}

/// add_option with a full-precision default string for the report.
template <typename T>
CLI::Option* opt(CLI::App* sub, const std::string& name, T& value, const std::string& help) {
    return sub->add_option(name, value, help)->default_str(default_text(value));
}

void add_circuit_options(CLI::App* sub, CircuitOptions& c) {
    opt(sub, "--shunt-fF", c.shunt_fF, "Shunt capacitance C_S (fF)");
    opt(sub, "--cj1-fF", c.junction1_fF, "Junction 1 capacitance (fF)");
    opt(sub, "--cj2-fF", c.junction2_fF, "Junction 2 capacitance (fF)");
    opt(sub, "--cg1-fF", c.gate1_fF, "Gate capacitance at node 1 (fF)");
    opt(sub, "--cg2-fF", c.gate2_fF, "Gate capacitance at node 2 (fF)");
    opt(sub, "--ej1-GHz", c.josephson1_GHz, "Josephson energy of junction 1 (GHz), required");
    opt(sub, "--ej2-GHz", c.josephson2_GHz, "Josephson energy of junction 2 (GHz), required");
    opt(sub, "--scale", c.scale, "Multiply C_S and both E_J by this factor");
    opt(sub, "--n-max", c.n_max, "Charge truncation per node (overrides config)");
}

bool is_usage_error(const junctionlab::Error& e) {
    return dynamic_cast<const junctionlab::InputError*>(&e) != nullptr ||
           dynamic_cast<const junctionlab::ParameterError*>(&e) != nullptr ||
           dynamic_cast<const junctionlab::ArityError*>(&e) != nullptr ||
           dynamic_cast<const junctionlab::RangeError*>(&e) != nullptr;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"junctionlab workbench: circuit spectra, tunneling IV, coherence fits and loss "
                 "budgets"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::string report_path;
    bool quiet = false;
    app.add_option("--config", config_path, "JSON configuration (fallback: $JUNCTIONLAB_CONFIG)");
    app.add_option("--out-dir", out_dir, "Directory for the report and plot-data CSVs");
    app.add_option("--report", report_path, "Report path (default <out-dir>/<command>.json)");
    app.add_flag("--quiet", quiet, "Do not print the report to stdout");

    SpectrumOptions spectrum;
    auto* s = app.add_subcommand("simulate-spectrum", "Double-junction qubit spectrum");
    add_circuit_options(s, spectrum.circuit);
    opt(s, "--ng-minus", spectrum.ng_minus, "Offset charge ng- (Cooper pairs)");
    opt(s, "--ng-plus", spectrum.ng_plus, "Offset charge ng+ (Cooper pairs)");
    opt(s, "--levels", spectrum.levels, "Number of levels to report");
    opt(s, "--sweep", spectrum.sweep, "'ng' adds a charge-dispersion sweep");
    opt(s, "--grid", spectrum.grid, "Gate grid points per axis for --sweep");

    DispersionOptions dispersion;
    auto* d = app.add_subcommand("sweep-dispersion", "Charge dispersion of f_ge over gate charge");
    add_circuit_options(d, dispersion.circuit);
    opt(d, "--grid", dispersion.grid, "Gate grid points per axis on [0, 1]");

    IvOptions iv;
    auto* v = app.add_subcommand("simulate-iv", "Quasiparticle IV curve of an NIS/SIS junction");
    opt(v, "--rn-kOhm", iv.normal_resistance_kOhm, "Normal-state resistance (kOhm)");
    opt(v, "--left-gap-meV", iv.left_gap_meV, "Left electrode gap at T = 0 (0 = normal)");
    opt(v, "--left-gamma", iv.left_gamma, "Left electrode Dynes parameter");
    opt(v, "--left-tc-K", iv.left_tc_K, "Left electrode critical temperature");
    opt(v, "--right-gap-meV", iv.right_gap_meV, "Right electrode gap at T = 0");
    opt(v, "--right-gamma", iv.right_gamma, "Right electrode Dynes parameter");
    opt(v, "--right-tc-K", iv.right_tc_K, "Right electrode critical temperature");
    opt(v, "--temperature-K", iv.temperature_K, "Bath temperature");
    opt(v, "--v-min-mV", iv.v_min_mV, "Lowest bias");
    opt(v, "--v-max-mV", iv.v_max_mV, "Highest bias");
    opt(v, "--v-step-mV", iv.v_step_mV, "Bias step");
    opt(v, "--subgap-lo-mV", iv.subgap_lo_mV, "Subgap fit window, lower edge");
    opt(v, "--subgap-hi-mV", iv.subgap_hi_mV, "Subgap fit window, upper edge");
    opt(v, "--onset-fraction", iv.onset_fraction,
                  "Onset = first V where I reaches this fraction of V/R_N");

    GapOptions gaps;
    auto* g = app.add_subcommand("extract-gaps", "Gap-vs-temperature table from IV traces");
    opt(g, "inputs", gaps.inputs, "IV CSV files or directories")->delimiter(',');
    opt(g, "--sum-lo-mV", gaps.sum_lo_mV, "Sum-gap window starts at this |V|");
    opt(g, "--diff-lo-mV", gaps.difference_lo_mV, "Difference-gap window, lower |V|");
    opt(g, "--diff-hi-mV", gaps.difference_hi_mV, "Difference-gap window, upper |V|");
    opt(g, "--min-prominence", gaps.min_prominence,
                  "Peak prominence as a fraction of the normal-state conductance");
    opt(g, "--plateau-temperature-K", gaps.plateau_temperature_K,
                  "Below this T a missing difference peak is expected");
    opt(g, "--plateau-max-temperature-K", gaps.plateau_max_temperature_K,
                  "Rows up to this T define the Delta_Nb plateau");

    DecayOptions t1_opts, ramsey_opts, echo_opts;
    auto* t1 = app.add_subcommand("fit-decay", "T1 fit of an exponential decay");
    opt(t1, "input", t1_opts.input, "Decay CSV (delay_us,population)");
    opt(t1, "--f-ge-GHz", t1_opts.f_ge_GHz, "Qubit frequency; adds Q = 2 pi f T1");
    auto* ramsey = app.add_subcommand("fit-ramsey", "T2* fit of a Ramsey fringe");
    opt(ramsey, "input", ramsey_opts.input, "Decay CSV (delay_us,population)");
    auto* echo = app.add_subcommand("fit-echo", "T2 echo fit of a Hahn-echo decay");
    opt(echo, "input", echo_opts.input, "Decay CSV (delay_us,population)");

    RaOptions ra;
    auto* r = app.add_subcommand("fit-ra", "Resistance-area fit R = RA/(d - l)^2");
    opt(r, "input", ra.input, "Prober CSV (die_x,die_y,d_nm,resistance_ohm)");
    opt(r, "--predict-d-nm", ra.predict_d_nm, "Sizes at which to report R")->delimiter(',');

    TrendOptions trend;
    auto* f = app.add_subcommand("freq-trend", "Linear f_ge vs junction size trend");
    opt(f, "input", trend.input, "CSV (d_nm,f_ge_GHz[,group])");
    opt(f, "--band-GHz", trend.band_GHz, "Residual band");

    LossOptions lossopt;
    auto* l = app.add_subcommand("loss-budget", "p tan(delta) budget and related bounds");
    opt(l, "--budget", lossopt.input, "JSON file {target_inverse_q, contributions: [...]}");
    opt(l, "--term", lossopt.terms, "name:participation:tan_delta (repeatable)")
        ->delimiter(',');
    opt(l, "--target-inverse-q", lossopt.target_inverse_q, "Target 1/Q");
    opt(l, "--junction-fF", lossopt.junction_fF, "Junction capacitance for p_J");
    opt(l, "--shunt-fF", lossopt.shunt_fF, "Shunt capacitance for p_J");
    opt(l, "--inverse-q", lossopt.inverse_q, "Measured 1/Q for the tan(delta) bound");
    opt(l, "--ej-GHz", lossopt.josephson_GHz, "Series junction E_J values")->delimiter(',');
    opt(l, "--ceff-fF", lossopt.effective_capacitance_fF, "Effective capacitance for Z_c");
    opt(l, "--impedance-ohm", lossopt.impedance_ohm, "Characteristic impedance");
    opt(l, "--subgap-MOhm", lossopt.subgap_MOhm, "Subgap resistance for the Q bound");
    opt(l, "--geometry-nm", lossopt.geometry_nm,
                  "lateral,barrier,sidewall,electrode (nm)")
        ->delimiter(',');
    opt(l, "--eps-r", lossopt.eps_r, "Barrier relative permittivity");

    RunConfig cfg;
    try {
        cfg = load_config(find_config_flag(args));
        apply_config_defaults(app, cfg);
    } catch (const junctionlab::Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    const fs::path directory = out_dir.empty() ? cfg.output_dir : fs::path(out_dir);
    const fs::path report_file =
        report_path.empty() ? directory / (command + ".json") : fs::path(report_path);

    Report report;
    report.command = command;
    report.config = cfg.to_json();
    report.parameters = effective_parameters(sub);
    OutputSink sink(directory, command, report);

    const std::map<std::string, std::function<void()>> handlers = {
        {"simulate-spectrum", [&] { simulate_spectrum(spectrum, cfg, report, sink); }},
        {"sweep-dispersion", [&] { sweep_dispersion(dispersion, cfg, report, sink); }},
        {"simulate-iv", [&] { simulate_iv(iv, cfg, report, sink); }},
        {"extract-gaps",
         [&] {
             if (gaps.inputs.empty()) throw junctionlab::InputError("no input files given");
             extract_gaps(gaps, cfg, report, sink);
         }},
        {"fit-decay",
         [&] {
             if (t1_opts.input.empty()) throw junctionlab::InputError("input CSV required");
             fit_decay(DecayModel::t1, t1_opts, cfg, report, sink);
         }},
        {"fit-ramsey",
         [&] {
             if (ramsey_opts.input.empty()) throw junctionlab::InputError("input CSV required");
             fit_decay(DecayModel::ramsey, ramsey_opts, cfg, report, sink);
         }},
        {"fit-echo",
         [&] {
             if (echo_opts.input.empty()) throw junctionlab::InputError("input CSV required");
             fit_decay(DecayModel::echo, echo_opts, cfg, report, sink);
         }},
        {"fit-ra",
         [&] {
             if (ra.input.empty()) throw junctionlab::InputError("input CSV required");
             fit_ra(ra, cfg, report, sink);
         }},
        {"freq-trend",
         [&] {
             if (trend.input.empty()) throw junctionlab::InputError("input CSV required");
             freq_trend(trend, cfg, report, sink);
         }},
        {"loss-budget", [&] { loss_budget(lossopt, cfg, report, sink); }},
    };

    int code = kExitOk;
    try {
        handlers.at(command)();
        if (report.status == RunStatus::not_converged) code = kExitAnalysisFailure;
    } catch (const junctionlab::Error& e) {
        if (is_usage_error(e)) {
            err << "error: " << e.what() << '\n';
            return kExitUsage;
        }
        report.status = RunStatus::failed;
        report.error = e.what();
        code = kExitAnalysisFailure;
    } catch (const std::exception& e) {
        report.status = RunStatus::failed;
        report.error = e.what();
        code = kExitAnalysisFailure;
    }

    try {
        const std::string text = report.dump();
        write_file_atomic(report_file, text);
        if (!quiet) out << text;
    } catch (const std::exception& e) {
        err << "error: cannot write report: " << e.what() << '\n';
        return kExitAnalysisFailure;
    }
    if (code != kExitOk) err << "error: " << (report.error.empty() ? "fit did not converge" : report.error) << '\n';
    return code;
}

}  // namespace workbench
