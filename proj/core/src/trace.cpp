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

#include "junctionlab/trace.hpp"

#include <cmath>
#include <string>

#include "junctionlab/errors.hpp"

namespace junctionlab {

std::string_view to_string(AxisUnit unit) {
    switch (unit) {
        case AxisUnit::millivolt: return "mV";
        case AxisUnit::microsecond: return "us";
        case AxisUnit::nanometer: return "nm";
    }
    return "?";
}

std::string_view to_string(ValueUnit unit) {
    switch (unit) {
        case ValueUnit::nanoampere: return "nA";
        case ValueUnit::per_kiloohm: return "1/kOhm";
        case ValueUnit::population: return "population";
        case ValueUnit::ohm: return "Ohm";
    }
    return "?";
}

SampledTrace::SampledTrace(std::vector<double> x, std::vector<double> y, AxisUnit x_unit,
                           ValueUnit y_unit, std::optional<double> temperature_K)
    : x_(std::move(x)), y_(std::move(y)), x_unit_(x_unit), y_unit_(y_unit),
      temperature_K_(temperature_K) {
    validate(kMinPoints);
}

SampledTrace SampledTrace::with_min_points(std::vector<double> x, std::vector<double> y,
                                           AxisUnit x_unit, ValueUnit y_unit,
                                           std::optional<double> temperature_K,
                                           std::size_t min_points) {
    SampledTrace t;
    t.x_ = std::move(x);
    t.y_ = std::move(y);
    t.x_unit_ = x_unit;
    t.y_unit_ = y_unit;
    t.temperature_K_ = temperature_K;
    t.validate(min_points);
    return t;
}

void SampledTrace::validate(std::size_t min_points) const {
    if (x_.size() != y_.size()) {
        throw InputError("trace x and y lengths differ (" + std::to_string(x_.size()) + " vs " +
                         std::to_string(y_.size()) + ")");
    }
    if (x_.size() < min_points) {
        throw InsufficientDataError("trace needs at least " + std::to_string(min_points) +
                                    " points, got " + std::to_string(x_.size()));
    }
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
            throw InputError("non-finite sample at index " + std::to_string(i));
        }
        if (i > 0 && !(x_[i] > x_[i - 1])) {
            throw InputError("trace x axis not strictly increasing at index " +
                             std::to_string(i));
        }
    }
    if (temperature_K_ && !(*temperature_K_ > 0.0)) {
        throw InputError("trace temperature must be positive");
    }
}

}  // namespace junctionlab
