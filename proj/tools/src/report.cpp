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

#include "workbench/report.hpp"

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <openssl/evp.h>
#include <unistd.h>

#include "junctionlab/errors.hpp"

#ifndef JUNCTIONLAB_VERSION
#define JUNCTIONLAB_VERSION "0.0.0"
#endif

namespace workbench {

namespace fs = std::filesystem;

std::string tool_version() { return JUNCTIONLAB_VERSION; }

std::string sha256_hex(const std::string& bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    std::string hex;
    for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw junctionlab::InputError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return sha256_hex(buffer.str());
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += fmt::format(".tmp{}", static_cast<long>(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw junctionlab::InputError("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw junctionlab::InputError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

namespace {

std::string to_string(RunStatus status) {
    switch (status) {
    case RunStatus::ok: return "ok";
    case RunStatus::not_converged: return "not_converged";
    case RunStatus::failed: return "failed";
    }
    return "unknown";
}

}  // namespace

Json Report::to_json() const {
    Json j;
    j["tool"] = kToolName;
    j["version"] = tool_version();
    j["command"] = command;
    Json files = Json::array();
    std::string combined;
    for (const auto& p : inputs) {
        const std::string digest = sha256_file(p);
        files.push_back({{"path", p.generic_string()}, {"sha256", digest}});
        combined += digest;
    }
    j["inputs"] = files;
    j["input_digest"] = inputs.empty() ? Json(nullptr) : Json(sha256_hex(combined));
    j["config"] = config;
    j["parameters"] = parameters;
    j["status"] = to_string(status);
    if (!error.empty()) j["error"] = error;
    j["results"] = results;
    j["warnings"] = warnings;
    j["outputs"] = outputs;
    return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

}  // namespace workbench
