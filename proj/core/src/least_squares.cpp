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

#include "junctionlab/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "junctionlab/errors.hpp"

namespace junctionlab::fit {

double FitReport::param(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return params[i];
    }
    throw std::out_of_range("no fit parameter named " + std::string(name));
}

double FitReport::std_error(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
            if (std_errors.empty()) {
                throw std::out_of_range("fit did not converge; no standard errors");
            }
            return std_errors[i];
        }
    }
    throw std::out_of_range("no fit parameter named " + std::string(name));
}

std::vector<double> finite_difference_gradient(const ParametricModel& model, double x,
                                               std::span<const double> p) {
    std::vector<double> work(p.begin(), p.end());
    std::vector<double> grad(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double h = 1e-6 * std::max(std::abs(p[j]), 1e-3);
        work[j] = p[j] + h;
        const double up = model.value(x, work);
        work[j] = p[j] - h;
        const double down = model.value(x, work);
        work[j] = p[j];
        grad[j] = (up - down) / (2.0 * h);
    }
    return grad;
}

namespace {

struct Problem {
    const ParametricModel& model;
    std::span<const double> x;
    std::span<const double> y;
    std::vector<double> weight;  // 1 / sigma

    Eigen::VectorXd residuals(std::span<const double> p) const {
        Eigen::VectorXd r(static_cast<Eigen::Index>(x.size()));
        for (std::size_t i = 0; i < x.size(); ++i) {
            r(static_cast<Eigen::Index>(i)) = (y[i] - model.value(x[i], p)) * weight[i];
        }
        return r;
    }

    /// Jacobian of the model values (not of the residuals), weighted.
    Eigen::MatrixXd jacobian(std::span<const double> p) const {
        const auto n = static_cast<Eigen::Index>(p.size());
        Eigen::MatrixXd j(static_cast<Eigen::Index>(x.size()), n);
        std::vector<double> grad(p.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (model.gradient) {
                model.gradient(x[i], p, grad);
            } else {
                grad = finite_difference_gradient(model, x[i], p);
            }
            for (Eigen::Index k = 0; k < n; ++k) {
                j(static_cast<Eigen::Index>(i), k) = grad[static_cast<std::size_t>(k)] * weight[i];
            }
        }
        return j;
    }
};

bool full_rank(const Eigen::MatrixXd& j) {
    // Column scaling keeps parameters of very different magnitude comparable.
    Eigen::VectorXd norms = j.colwise().norm();
    if ((norms.array() == 0.0).any()) return false;
    Eigen::MatrixXd scaled = j * norms.cwiseInverse().asDiagonal();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    qr.setThreshold(1e-10);
    return qr.rank() == j.cols();
}

void project(std::vector<double>& p, const Bounds& b) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::clamp(p[i], b.lower[i], b.upper[i]);
    }
}

}  // namespace

FitReport damped_least_squares(const ParametricModel& model, std::span<const double> x,
                               std::span<const double> y, std::span<const double> initial,
                               const Bounds& bounds, std::span<const double> sigma,
                               const LeastSquaresOptions& options) {
    const std::size_t n = model.size();
    if (initial.size() != n || bounds.lower.size() != n || bounds.upper.size() != n) {
        throw ArityError("model has " + std::to_string(n) +
                         " parameters; initial values or bounds differ in length");
    }
    if (x.size() != y.size() || (!sigma.empty() && sigma.size() != x.size())) {
        throw ArityError("data arrays differ in length");
    }
    if (x.size() < n + 1) {
        throw InsufficientDataError("fit of " + std::to_string(n) + " parameters needs at least " +
                                    std::to_string(n + 1) + " points, got " +
                                    std::to_string(x.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(initial[i] >= bounds.lower[i] && initial[i] <= bounds.upper[i])) {
            throw ParameterError("initial value of " + model.names[i] + " outside its bounds");
        }
    }

    Problem problem{model, x, y, std::vector<double>(x.size(), 1.0)};
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (!(sigma[i] > 0.0)) throw ParameterError("sigma must be positive");
        problem.weight[i] = 1.0 / sigma[i];
    }

    std::vector<double> p(initial.begin(), initial.end());
    Eigen::VectorXd r = problem.residuals(p);
    double cost = r.squaredNorm();
    Eigen::MatrixXd j = problem.jacobian(p);
    if (!full_rank(j)) {
        throw DegenerateModelError("Jacobian is rank-deficient at the initial parameters");
    }

    FitReport report;
    report.names = model.names;

    double damping = 0.0;  // first attempt is a plain Gauss-Newton step
    int iteration = 0;
    bool converged = false;
    while (iteration < options.max_iterations) {
        const Eigen::MatrixXd jtj = j.transpose() * j;
        const Eigen::VectorXd gradient = j.transpose() * r;
        if (gradient.norm() < options.gradient_tol || cost == 0.0) {
            converged = true;
            break;
        }
        ++iteration;
        const double diag_scale = jtj.diagonal().maxCoeff();
        bool accepted = false;
        while (!accepted) {
            Eigen::MatrixXd lhs = jtj;
            lhs.diagonal() += damping * jtj.diagonal();
            const Eigen::VectorXd step = lhs.ldlt().solve(gradient);
            std::vector<double> trial(n);
            for (std::size_t k = 0; k < n; ++k) {
                trial[k] = p[k] + step(static_cast<Eigen::Index>(k));
            }
            project(trial, bounds);
            const Eigen::VectorXd trial_r = problem.residuals(trial);
            const double trial_cost = trial_r.squaredNorm();
            if (std::isfinite(trial_cost) && trial_cost <= cost) {
                const double change = cost - trial_cost;
                p = std::move(trial);
                r = trial_r;
                cost = trial_cost;
                j = problem.jacobian(p);
                damping = damping < 1e-12 ? 0.0 : damping / 10.0;
                accepted = true;
                if (change <= options.relative_residual_tol * (cost + change)) {
                    converged = true;
                }
            } else {
                damping = damping == 0.0 ? 1e-3 : damping * 10.0;
                if (damping > 1e16 * std::max(diag_scale, 1.0)) {
                    // No descent direction left at double precision.
                    converged = true;
                    break;
                }
            }
        }
        if (converged) break;
    }

    report.params = p;
    report.residual_norm = std::sqrt(cost);
    report.iterations = iteration;
    report.converged = converged;
    if (!converged) {
        report.warnings.push_back("maximum iterations (" + std::to_string(options.max_iterations) +
                                  ") reached without convergence");
        return report;
    }
    if (!full_rank(j)) {
        throw DegenerateModelError("Jacobian is rank-deficient at the optimum; parameters are not "
                                   "identifiable");
    }
    const double dof = static_cast<double>(x.size() - n);
    const double variance = cost / dof;
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::MatrixXd covariance =
        jtj.ldlt().solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                   static_cast<Eigen::Index>(n))) *
        variance;
    report.std_errors.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        report.std_errors[k] =
            std::sqrt(std::max(0.0, covariance(static_cast<Eigen::Index>(k),
                                               static_cast<Eigen::Index>(k))));
    }
    return report;
}

FitReport damped_least_squares(const ParametricModel& model, const SampledTrace& data,
                               std::span<const double> initial, const Bounds& bounds,
                               const LeastSquaresOptions& options) {
    return damped_least_squares(model, data.x(), data.y(), initial, bounds, {}, options);
}

}  // namespace junctionlab::fit
