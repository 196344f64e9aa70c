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

#include "workbench/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "workbench/report.hpp"

namespace workbench {

namespace fs = std::filesystem;

ParseError::ParseError(const fs::path& path, std::size_t line, const std::string& message)
    : junctionlab::InputError(line > 0 ? fmt::format("{}:{}: {}", path.string(), line, message)
                                       : fmt::format("{}: {}", path.string(), message)),
      line_(line) {}

TraceKind parse_trace_kind(const std::string& name) {
    if (name == "iv") return TraceKind::iv;
    if (name == "didv") return TraceKind::didv;
    if (name == "decay") return TraceKind::decay;
    if (name == "prober") return TraceKind::prober;
    if (name == "trend") return TraceKind::trend;
    throw junctionlab::InputError("unknown trace kind '" + name + "'");
}

namespace {

struct Row {
    std::size_t line;
    std::vector<std::string> fields;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string_view rest = line;
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(trim(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

struct Table {
    std::vector<std::string> header;
    std::size_t header_line{};
    std::vector<Row> rows;
};

Table read_table(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    Table table;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (table.header.empty()) {
            table.header = split(t);
            table.header_line = number;
        } else {
            table.rows.push_back({number, split(t)});
        }
    }
    if (table.header.empty()) throw ParseError(path, 0, "empty file: no header line");
    return table;
}

// Prefix before the unit suffix, e.g. "voltage" for "voltage_mV".
std::string quantity_of(const std::string& column) {
    const auto underscore = column.find('_');
    return underscore == std::string::npos ? column : column.substr(0, underscore);
}

/// Checks the header against the accepted layouts; returns the column count used.
std::size_t check_header(const fs::path& path, const Table& table,
                         const std::vector<std::string>& required,
                         const std::vector<std::string>& optional_tail) {
    const auto& h = table.header;
    for (std::size_t i = 0; i < required.size(); ++i) {
        if (i >= h.size()) {
            throw ParseError(path, table.header_line,
                             fmt::format("missing column '{}'", required[i]));
        }
        if (h[i] != required[i]) {
            if (quantity_of(h[i]) == quantity_of(required[i])) {
                throw ParseError(path, table.header_line,
                                 fmt::format("unit mismatch: column {} is '{}', expected '{}'",
                                             i + 1, h[i], required[i]));
            }
            throw ParseError(path, table.header_line,
                             fmt::format("missing column '{}' (found '{}' in column {})",
                                         required[i], h[i], i + 1));
        }
    }
    std::size_t columns = required.size();
    for (const auto& extra : optional_tail) {
        if (h.size() <= columns) break;
        if (h[columns] != extra) {
            throw ParseError(path, table.header_line,
                             fmt::format("unexpected column '{}' (expected '{}')", h[columns], extra));
        }
        ++columns;
    }
    if (h.size() > columns) {
        throw ParseError(path, table.header_line,
                         fmt::format("unexpected column '{}'", h[columns]));
    }
    return columns;
}

double parse_number(const fs::path& path, const Row& row, std::size_t column,
                    const std::string& name) {
    const std::string& s = row.fields[column];
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(path, row.line, fmt::format("'{}' is not a number in column '{}'", s, name));
    }
    if (!std::isfinite(value)) {
        throw ParseError(path, row.line, fmt::format("non-finite value in column '{}'", name));
    }
    return value;
}

std::optional<int> parse_optional_int(const fs::path& path, const Row& row, std::size_t column,
                                      const std::string& name) {
    const std::string& s = row.fields[column];
    if (s.empty()) return std::nullopt;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(path, row.line, fmt::format("'{}' is not an integer in column '{}'", s, name));
    }
    return value;
}

void check_width(const fs::path& path, const Row& row, std::size_t columns) {
    if (row.fields.size() != columns) {
        throw ParseError(path, row.line,
                         fmt::format("expected {} fields, found {}", columns, row.fields.size()));
    }
}

void require_increasing(const fs::path& path, const std::vector<Row>& rows,
                        const std::vector<double>& x, const std::string& name) {
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) {
            throw ParseError(path, rows[i].line,
                             fmt::format("non-monotone {}: {} follows {}", name, x[i], x[i - 1]));
        }
    }
}

junctionlab::SampledTrace make_trace(const fs::path& path, std::vector<double> x,
                                     std::vector<double> y, junctionlab::AxisUnit xu,
                                     junctionlab::ValueUnit yu, std::optional<double> temperature) {
    try {
        junctionlab::SampledTrace trace(std::move(x), std::move(y), xu, yu, temperature);
        trace.set_meta("source", path.filename().string());
        return trace;
    } catch (const junctionlab::Error& e) {
        throw ParseError(path, 0, e.what());
    }
}

}  // namespace

LoadedCsv load_trace_csv(const fs::path& path, TraceKind kind) {
    const Table table = read_table(path);
    LoadedCsv out;
    std::vector<double> x, y;

    switch (kind) {
    case TraceKind::iv: {
        const std::size_t cols =
            check_header(path, table, {"voltage_mV", "current_nA"}, {"temperature_K"});
        std::optional<double> temperature;
        for (const auto& row : table.rows) {
            check_width(path, row, cols);
            x.push_back(parse_number(path, row, 0, "voltage_mV"));
            y.push_back(parse_number(path, row, 1, "current_nA"));
            if (cols == 3) {
                const double t = parse_number(path, row, 2, "temperature_K");
                if (!(t > 0.0)) throw ParseError(path, row.line, "temperature_K must be positive");
                if (temperature && t != *temperature) {
                    throw ParseError(path, row.line,
                                     fmt::format("temperature_K changes within the file ({} vs {})",
                                                 t, *temperature));
                }
                temperature = t;
            }
        }
        require_increasing(path, table.rows, x, "voltage_mV");
        out.trace = make_trace(path, std::move(x), std::move(y), junctionlab::AxisUnit::millivolt,
                               junctionlab::ValueUnit::nanoampere, temperature);
        break;
    }
    case TraceKind::didv: {
        const std::size_t cols = check_header(path, table, {"voltage_mV", "conductance_per_kohm"}, {});
        for (const auto& row : table.rows) {
            check_width(path, row, cols);
            x.push_back(parse_number(path, row, 0, "voltage_mV"));
            y.push_back(parse_number(path, row, 1, "conductance_per_kohm"));
        }
        require_increasing(path, table.rows, x, "voltage_mV");
        out.trace = make_trace(path, std::move(x), std::move(y), junctionlab::AxisUnit::millivolt,
                               junctionlab::ValueUnit::per_kiloohm, std::nullopt);
        break;
    }
    case TraceKind::decay: {
        const std::size_t cols = check_header(path, table, {"delay_us", "population"}, {});
        std::vector<std::size_t> lines;
        for (const auto& row : table.rows) {
            check_width(path, row, cols);
            x.push_back(parse_number(path, row, 0, "delay_us"));
            y.push_back(parse_number(path, row, 1, "population"));
            lines.push_back(row.line);
        }
        std::vector<std::size_t> order(x.size());
        std::iota(order.begin(), order.end(), 0);
        if (!std::is_sorted(x.begin(), x.end())) {
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
            out.warnings.push_back(
                fmt::format("{}: rows were not in delay order and have been sorted", path.string()));
        }
        std::vector<double> xs, ys;
        for (std::size_t k = 0; k < order.size(); ++k) {
            const std::size_t i = order[k];
            if (k > 0 && x[i] == xs.back()) {
                throw ParseError(path, lines[i], fmt::format("duplicate delay_us {}", x[i]));
            }
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
        out.trace = make_trace(path, std::move(xs), std::move(ys), junctionlab::AxisUnit::microsecond,
                               junctionlab::ValueUnit::population, std::nullopt);
        break;
    }
    case TraceKind::prober: {
        const std::size_t cols =
            check_header(path, table, {"die_x", "die_y", "d_nm", "resistance_ohm"}, {});
        for (const auto& row : table.rows) {
            check_width(path, row, cols);
            junctionlab::fit::WaferResistancePoint p;
            p.die_x = parse_optional_int(path, row, 0, "die_x");
            p.die_y = parse_optional_int(path, row, 1, "die_y");
            p.d_nm = parse_number(path, row, 2, "d_nm");
            p.resistance_ohm = parse_number(path, row, 3, "resistance_ohm");
            try {
                p.validate();
            } catch (const junctionlab::Error& e) {
                throw ParseError(path, row.line, e.what());
            }
            out.points.push_back(p);
        }
        if (out.points.empty()) throw ParseError(path, 0, "no data rows");
        break;
    }
    case TraceKind::trend: {
        const std::size_t cols = check_header(path, table, {"d_nm", "f_ge_GHz"}, {"group"});
        for (const auto& row : table.rows) {
            check_width(path, row, cols);
            junctionlab::fit::SizeFrequencyPoint p;
            p.d_nm = parse_number(path, row, 0, "d_nm");
            p.f_ge_GHz = parse_number(path, row, 1, "f_ge_GHz");
            if (!(p.d_nm > 0.0) || !(p.f_ge_GHz > 0.0)) {
                throw ParseError(path, row.line, "d_nm and f_ge_GHz must be positive");
            }
            if (cols == 3) p.group = row.fields[2];
            out.trend.push_back(std::move(p));
        }
        if (out.trend.empty()) throw ParseError(path, 0, "no data rows");
        break;
    }
    }
    return out;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const auto& in : inputs) {
        const fs::path p(in);
        if (fs::is_directory(p)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::directory_iterator(p)) {
                if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                    found.push_back(entry.path());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::exists(p)) {
            files.push_back(p);
        } else {
            throw junctionlab::InputError("input not found: " + in);
        }
    }
    return files;
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::string text;
    for (std::size_t c = 0; c < header.size(); ++c) {
        text += (c ? "," : "") + header[c];
    }
    text += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) text += ',';
            text += fmt::format("{:.17g}", columns[c][r]);
        }
        text += '\n';
    }
    write_file_atomic(path, text);
}

}  // namespace workbench
