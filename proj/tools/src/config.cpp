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

#include "workbench/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include <fmt/format.h>

#include "junctionlab/constants.hpp"

namespace workbench {

namespace fs = std::filesystem;
namespace k = junctionlab::constants;

PhysicalConstants PhysicalConstants::codata() {
    return {k::kElementaryCharge, k::kPlanck, k::kBoltzmann, k::kVacuumPermittivity};
}

namespace {

void reject_unknown(const Json& object, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        bool ok = false;
        for (const char* name : known) ok = ok || key == name;
        if (!ok) throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
    }
}

double number(const Json& object, const char* key, double fallback, const std::string& where) {
    if (!object.contains(key)) return fallback;
    const Json& v = object.at(key);
    if (!v.is_number()) throw ConfigError(fmt::format("{}.{} must be a number", where, key));
    return v.get<double>();
}

void set_constant(const Json& block, const char* key, double& slot) {
    const double value = number(block, key, slot, "constants");
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError(fmt::format("constants.{} must be positive", key));
    }
    // The library is compiled against CODATA 2018 values; accepting a different
    // value here would be silently ignored by the computations.
    if (std::abs(value - slot) > 1e-12 * slot) {
        throw ConfigError(fmt::format(
            "constants.{} = {} differs from the compiled CODATA value {}; overriding physical "
            "constants is not supported",
            key, value, slot));
    }
    slot = value;
}

}  // namespace

RunConfig parse_config(const Json& doc, std::optional<fs::path> source) {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    reject_unknown(doc, {"constants", "truncation", "fit", "output_dir", "commands"}, "config");
    RunConfig cfg;
    cfg.source = std::move(source);
    if (doc.contains("constants")) {
        const Json& c = doc.at("constants");
        reject_unknown(c, {"elementary_charge_C", "planck_J_s", "boltzmann_J_per_K",
                           "vacuum_permittivity_F_per_m"},
                       "constants");
        set_constant(c, "elementary_charge_C", cfg.constants.elementary_charge_C);
        set_constant(c, "planck_J_s", cfg.constants.planck_J_s);
        set_constant(c, "boltzmann_J_per_K", cfg.constants.boltzmann_J_per_K);
        set_constant(c, "vacuum_permittivity_F_per_m", cfg.constants.vacuum_permittivity_F_per_m);
    }
    if (doc.contains("truncation")) {
        const Json& t = doc.at("truncation");
        reject_unknown(t, {"n_max", "convergence_tol_Hz"}, "truncation");
        const double n_max = number(t, "n_max", cfg.truncation.n_max, "truncation");
        if (n_max != std::floor(n_max)) throw ConfigError("truncation.n_max must be an integer");
        cfg.truncation.n_max = static_cast<int>(n_max);
        cfg.truncation.convergence_tol_Hz =
            number(t, "convergence_tol_Hz", cfg.truncation.convergence_tol_Hz, "truncation");
        try {
            cfg.truncation.validate();
        } catch (const junctionlab::Error& e) {
            throw ConfigError(std::string("truncation: ") + e.what());
        }
    }
    if (doc.contains("fit")) {
        const Json& f = doc.at("fit");
        reject_unknown(f, {"max_iterations", "relative_residual_tol", "gradient_tol"}, "fit");
        const double iters = number(f, "max_iterations", cfg.fit.max_iterations, "fit");
        if (iters < 1 || iters != std::floor(iters)) {
            throw ConfigError("fit.max_iterations must be a positive integer");
        }
        cfg.fit.max_iterations = static_cast<int>(iters);
        cfg.fit.relative_residual_tol =
            number(f, "relative_residual_tol", cfg.fit.relative_residual_tol, "fit");
        cfg.fit.gradient_tol = number(f, "gradient_tol", cfg.fit.gradient_tol, "fit");
        if (!(cfg.fit.relative_residual_tol > 0.0) || !(cfg.fit.gradient_tol > 0.0)) {
            throw ConfigError("fit tolerances must be positive");
        }
    }
    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) throw ConfigError("output_dir must be a string");
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }
    if (doc.contains("commands")) {
        if (!doc.at("commands").is_object()) throw ConfigError("commands must be an object");
        cfg.commands = doc.at("commands");
    }
    return cfg;
}

RunConfig load_config(const std::optional<fs::path>& explicit_path) {
    std::optional<fs::path> path = explicit_path;
    if (!path) {
        if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
            path = fs::path(env);
        }
    }
    if (!path) return RunConfig{};
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open configuration file " + path->string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(fmt::format("{}: {}", path->string(), e.what()));
    }
    return parse_config(doc, path);
}

Json RunConfig::to_json() const {
    Json j;
    j["source"] = source ? Json(source->generic_string()) : Json(nullptr);
    j["constants"] = {{"elementary_charge_C", constants.elementary_charge_C},
                      {"planck_J_s", constants.planck_J_s},
                      {"boltzmann_J_per_K", constants.boltzmann_J_per_K},
                      {"vacuum_permittivity_F_per_m", constants.vacuum_permittivity_F_per_m}};
    j["truncation"] = {{"n_max", truncation.n_max},
                       {"convergence_tol_Hz", truncation.convergence_tol_Hz}};
    j["fit"] = {{"max_iterations", fit.max_iterations},
                {"relative_residual_tol", fit.relative_residual_tol},
                {"gradient_tol", fit.gradient_tol}};
    j["output_dir"] = output_dir.generic_string();
    return j;
}

}  // namespace workbench
