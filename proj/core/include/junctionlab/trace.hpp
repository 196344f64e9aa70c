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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace junctionlab {

enum class AxisUnit { millivolt, microsecond, nanometer };
enum class ValueUnit { nanoampere, per_kiloohm, population, ohm };

std::string_view to_string(AxisUnit unit);
std::string_view to_string(ValueUnit unit);

/// Ordered (x, y) measurement series: IV curve, dI/dV curve or time-domain
/// decay. The x axis is strictly increasing and holds at least
/// SampledTrace::kMinPoints samples.
class SampledTrace {
public:
    static constexpr std::size_t kMinPoints = 4;

    SampledTrace(std::vector<double> x, std::vector<double> y, AxisUnit x_unit,
                 ValueUnit y_unit, std::optional<double> temperature_K = std::nullopt);

    /// Same as the constructor but permits fewer points (down to `min_points`).
    static SampledTrace with_min_points(std::vector<double> x, std::vector<double> y,
                                        AxisUnit x_unit, ValueUnit y_unit,
                                        std::optional<double> temperature_K,
                                        std::size_t min_points);

    [[nodiscard]] std::span<const double> x() const { return x_; }
    [[nodiscard]] std::span<const double> y() const { return y_; }
    [[nodiscard]] std::size_t size() const { return x_.size(); }
    [[nodiscard]] AxisUnit x_unit() const { return x_unit_; }
    [[nodiscard]] ValueUnit y_unit() const { return y_unit_; }
    [[nodiscard]] std::optional<double> temperature_K() const { return temperature_K_; }

    [[nodiscard]] const std::map<std::string, std::string>& meta() const { return meta_; }
    void set_meta(const std::string& key, std::string value) { meta_[key] = std::move(value); }

private:
    SampledTrace() = default;
    void validate(std::size_t min_points) const;

    std::vector<double> x_;
    std::vector<double> y_;
    AxisUnit x_unit_{AxisUnit::millivolt};
    ValueUnit y_unit_{ValueUnit::nanoampere};
    std::optional<double> temperature_K_;
    std::map<std::string, std::string> meta_;
};

}  // namespace junctionlab
