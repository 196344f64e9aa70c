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

// Damped Gauss-Newton (Levenberg-Marquardt) least squares with box bounds and
// Jacobian-based parameter uncertainties.

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "junctionlab/trace.hpp"

namespace junctionlab::fit {

/// y = value(x, p). `gradient` fills dy/dp; when empty, central finite
/// differences are used.
struct ParametricModel {
    std::vector<std::string> names;
    std::function<double(double x, std::span<const double> p)> value;
    std::function<void(double x, std::span<const double> p, std::span<double> grad)> gradient;

    [[nodiscard]] std::size_t size() const { return names.size(); }
};

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds unbounded(std::size_t n) {
        return {std::vector<double>(n, -std::numeric_limits<double>::infinity()),
                std::vector<double>(n, std::numeric_limits<double>::infinity())};
    }
};

struct LeastSquaresOptions {
    int max_iterations{200};
    double relative_residual_tol{1e-10};
    double gradient_tol{1e-12};
};

struct FitReport {
    std::vector<std::string> names;
    std::vector<double> params;
    /// Empty unless `converged`.
    std::vector<double> std_errors;
    double residual_norm{};
    bool converged{false};
    int iterations{};
    std::vector<std::string> warnings;

    /// Value of the named parameter; throws std::out_of_range for unknown names.
    [[nodiscard]] double param(std::string_view name) const;
    [[nodiscard]] double std_error(std::string_view name) const;
};

/// Minimizes sum ((y_i - model(x_i)) / sigma_i)^2 (sigma defaults to 1).
/// Converges when an accepted step changes the residual by less than
/// relative_residual_tol or the gradient norm falls below gradient_tol.
/// Iteration exhaustion returns converged = false; a rank-deficient Jacobian
/// throws DegenerateModelError.
FitReport damped_least_squares(const ParametricModel& model, std::span<const double> x,
                               std::span<const double> y, std::span<const double> initial,
                               const Bounds& bounds, std::span<const double> sigma = {},
                               const LeastSquaresOptions& options = {});

FitReport damped_least_squares(const ParametricModel& model, const SampledTrace& data,
                               std::span<const double> initial, const Bounds& bounds,
                               const LeastSquaresOptions& options = {});

/// Central-difference gradient of `model.value` (step scaled to each parameter).
std::vector<double> finite_difference_gradient(const ParametricModel& model, double x,
                                               std::span<const double> p);

}  // namespace junctionlab::fit
