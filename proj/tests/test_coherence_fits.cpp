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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "junctionlab/coherence_fits.hpp"
#include "junctionlab/errors.hpp"
#include "junctionlab/least_squares.hpp"

namespace jf = junctionlab::fit;
using junctionlab::AxisUnit;
using junctionlab::SampledTrace;
using junctionlab::ValueUnit;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

SampledTrace decay_trace(double tau, double amplitude, double offset, double noise,
                         std::uint64_t seed, double span = 150.0, int n = 101) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> eps(0.0, noise);
    auto t = linspace(0.0, span, n);
    std::vector<double> y;
    for (double x : t) y.push_back(amplitude * std::exp(-x / tau) + offset + (noise > 0 ? eps(rng) : 0.0));
    return SampledTrace(std::move(t), std::move(y), AxisUnit::microsecond, ValueUnit::population);
}

SampledTrace ramsey_trace(double tau, double detuning_MHz, double phase, double noise,
                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> eps(0.0, noise);
    auto t = linspace(0.0, 50.0, 201);
    std::vector<double> y;
    for (double x : t) {
        y.push_back(0.45 * std::exp(-x / tau) * std::cos(kTwoPi * detuning_MHz * x + phase) + 0.5 +
                    (noise > 0 ? eps(rng) : 0.0));
    }
    return SampledTrace(std::move(t), std::move(y), AxisUnit::microsecond, ValueUnit::population);
}

std::vector<jf::WaferResistancePoint> prober_points(double ra, double l, double noise,
                                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> eps(0.0, noise);
    std::vector<jf::WaferResistancePoint> pts;
    int die = 0;
    for (double d : {500.0, 600.0, 800.0, 1000.0, 1500.0, 2000.0, 3000.0, 5000.0}) {
        for (int k = 0; k < 3; ++k, ++die) {
            const double r = jf::resistance_from_area(ra, l, d) * (1.0 + eps(rng));
            pts.push_back({d, r, die % 5, die / 5});
        }
    }
    return pts;
}

bool within(const jf::FitReport& r, const std::string& name, double truth, double k = 3.0) {
    return std::abs(r.param(name) - truth) <= k * r.std_error(name);
}

jf::ParametricModel linear_model() {
    jf::ParametricModel m;
    m.names = {"a", "b"};
    m.value = [](double x, std::span<const double> p) { return p[0] + p[1] * x; };
    m.gradient = [](double x, std::span<const double>, std::span<double> g) {
        g[0] = 1.0;
        g[1] = x;
    };
    return m;
}

}  // namespace

TEST(LeastSquares, ExactLinearDataConvergesInOneStep) {
    const auto x = linspace(0, 10, 11);
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 - 0.5 * v);
    const double init[] = {0.0, 0.0};
    const auto r = jf::damped_least_squares(linear_model(), x, y, init, jf::Bounds::unbounded(2));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.iterations, 2);
    EXPECT_LT(r.residual_norm, 1e-12);
    EXPECT_NEAR(r.param("a"), 2.0, 1e-12);
    EXPECT_NEAR(r.param("b"), -0.5, 1e-12);
}

TEST(LeastSquares, OptimumStartIsAFixedPoint) {
    const auto trace = decay_trace(36.0, 0.9, 0.05, 0.0, 0);
    const double init[] = {0.9, 36.0, 0.05};
    const auto r = jf::damped_least_squares(jf::exponential_decay_model("T1_us"), trace, init,
                                            jf::Bounds::unbounded(3));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.iterations, 2);
    EXPECT_NEAR(r.param("T1_us"), 36.0, 1e-9);
}

TEST(LeastSquares, NoisyExponentialWithinThreeStdErrors) {
    const auto trace = decay_trace(36.0, 1.0, 0.0, 0.01, 99);
    const auto r = jf::fit_t1(trace);
    ASSERT_TRUE(r.converged);
    EXPECT_TRUE(within(r, "T1_us", 36.0));
    EXPECT_GE(r.residual_norm, 0.0);
}

TEST(LeastSquares, IterationExhaustionReportsNotConverged) {
    const auto trace = decay_trace(36.0, 0.9, 0.05, 0.01, 3);
    const double init[] = {0.1, 500.0, 0.5};
    jf::LeastSquaresOptions opts;
    opts.max_iterations = 1;
    const auto r = jf::damped_least_squares(jf::exponential_decay_model("T1_us"), trace, init,
                                            jf::Bounds::unbounded(3), opts);
    EXPECT_FALSE(r.converged);
    EXPECT_TRUE(r.std_errors.empty());
    EXPECT_THROW((void)r.std_error("T1_us"), std::out_of_range);
}

TEST(LeastSquares, FallsBackToFiniteDifferences) {
    auto m = linear_model();
    m.gradient = nullptr;
    const auto x = linspace(0, 1, 6);
    const std::vector<double> y{1, 2, 3, 4, 5, 6};
    const double init[] = {0.0, 1.0};
    const auto r = jf::damped_least_squares(m, x, y, init, jf::Bounds::unbounded(2));
    EXPECT_NEAR(r.param("b"), 5.0, 1e-8);
}

TEST(LeastSquares, SingularJacobianIsDegenerate) {
    jf::ParametricModel m;
    m.names = {"a", "b"};
    m.value = [](double x, std::span<const double> p) { return (p[0] + p[1]) * x; };
    const auto x = linspace(0, 1, 6);
    const std::vector<double> y{0, 1, 2, 3, 4, 5};
    const double init[] = {1.0, 1.0};
    EXPECT_THROW(jf::damped_least_squares(m, x, y, init, jf::Bounds::unbounded(2)),
                 junctionlab::DegenerateModelError);
}

TEST(LeastSquares, ArgumentErrors) {
    const auto m = linear_model();
    const auto x = linspace(0, 1, 6);
    const std::vector<double> y{0, 1, 2, 3, 4, 5};
    const double init2[] = {0.0, 0.0};
    const double init3[] = {0.0, 0.0, 0.0};
    const auto b = jf::Bounds::unbounded(2);
    EXPECT_THROW(jf::damped_least_squares(m, x, y, init3, b), junctionlab::ArityError);
    EXPECT_THROW(jf::damped_least_squares(m, x, std::span(y).first(5), init2, b),
                 junctionlab::ArityError);
    EXPECT_THROW(jf::damped_least_squares(m, std::span(x).first(2), std::span(y).first(2), init2, b),
                 junctionlab::InsufficientDataError);
    jf::Bounds tight{{1.0, -1.0}, {2.0, 1.0}};
    EXPECT_THROW(jf::damped_least_squares(m, x, y, init2, tight), junctionlab::ParameterError);
    const std::vector<double> bad_sigma(6, 0.0);
    EXPECT_THROW(jf::damped_least_squares(m, x, y, init2, b, bad_sigma), junctionlab::ParameterError);
}

TEST(DecayFits, PlantedTimeConstants) {
    const auto t1 = jf::fit_t1(decay_trace(36.0, 0.9, 0.05, 0.01, 1));
    EXPECT_NEAR(t1.param("T1_us"), 36.0, 0.02 * 36.0);
    const auto echo = jf::fit_echo(decay_trace(42.0, 0.45, 0.5, 0.01, 2));
    EXPECT_NEAR(echo.param("T2_echo_us"), 42.0, 0.02 * 42.0);
    const auto rising = jf::fit_t1(decay_trace(36.0, -0.9, 0.95, 0.01, 4));
    EXPECT_NEAR(rising.param("T1_us"), 36.0, 0.02 * 36.0);
}

TEST(DecayFits, DegenerateAndShortTraces) {
    const SampledTrace flat(linspace(0, 10, 20), std::vector<double>(20, 0.4), AxisUnit::microsecond,
                            ValueUnit::population);
    EXPECT_THROW(jf::fit_t1(flat), junctionlab::DegenerateModelError);
    const SampledTrace zero(linspace(0, 10, 20), std::vector<double>(20, 0.0), AxisUnit::microsecond,
                            ValueUnit::population);
    EXPECT_THROW(jf::fit_echo(zero), junctionlab::DegenerateModelError);
    const auto two = SampledTrace::with_min_points({0.0, 1.0}, {1.0, 0.5}, AxisUnit::microsecond,
                                                   ValueUnit::population, std::nullopt, 2);
    EXPECT_THROW(jf::fit_t1(two), junctionlab::InsufficientDataError);
}

TEST(RamseyFit, PlantedDephasing) {
    const auto r = jf::fit_ramsey(ramsey_trace(17.0, 0.5, 0.3, 0.01, 5));
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.param("T2_star_us"), 17.0, 0.03 * 17.0);
    EXPECT_NEAR(r.param("detuning_MHz"), 0.5, 0.01);
    EXPECT_GT(r.param("amplitude"), 0.0);
}

TEST(RamseyFit, ZeroDetuningFallsBackToDecay) {
    const auto r = jf::fit_ramsey(decay_trace(17.0, 0.45, 0.5, 0.005, 6, 50.0, 201));
    ASSERT_FALSE(r.warnings.empty());
    EXPECT_NEAR(r.param("T2_star_us"), 17.0, 0.05 * 17.0);
}

TEST(RamseyFit, SpectralPeakGuess) {
    const auto trace = ramsey_trace(40.0, 0.37, 0.0, 0.0, 0);
    EXPECT_NEAR(jf::dominant_frequency_MHz(trace.x(), trace.y()), 0.37, 0.005);
}

TEST(QualityFactor, ClosedForm) {
    EXPECT_NEAR(jf::quality_factor(5.17, 36.0), 1.17e6, 1e3);
    EXPECT_NEAR(jf::quality_factor(5.17, 30.0), kTwoPi * 5.17e9 * 30e-6, 1e-6);
    EXPECT_LT(jf::quality_factor(5.17, 1e-12), 1e-1);
    EXPECT_THROW(jf::quality_factor(0.0, 30.0), junctionlab::ParameterError);
    EXPECT_THROW(jf::quality_factor(5.17, -1.0), junctionlab::ParameterError);
}

TEST(ResistanceArea, RecoversPlantedScaling) {
    const auto pts = prober_points(1100.0, 90.0, 0.01, 8);
    const auto r = jf::fit_resistance_area(pts);
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.param("RA_ohm_um2"), 1100.0, 22.0);
    EXPECT_NEAR(r.param("l_nm"), 90.0, 1.8);
    EXPECT_NEAR(jf::resistance_from_area(1100.0, 90.0, 600.0), 4229.0, 1.0);
}

TEST(ResistanceArea, ZeroReductionLength) {
    const auto r = jf::fit_resistance_area(prober_points(1100.0, 0.0, 0.0, 0));
    EXPECT_NEAR(r.param("l_nm"), 0.0, 1e-6);
    EXPECT_NEAR(r.param("RA_ohm_um2"), 1100.0, 1e-6);
}

TEST(ResistanceArea, Errors) {
    auto pts = prober_points(1100.0, 90.0, 0.0, 0);
    EXPECT_THROW(jf::fit_resistance_area(std::span(pts).first(3)), junctionlab::InsufficientDataError);
    std::vector<jf::WaferResistancePoint> narrow;
    for (double d : {500.0, 600.0, 700.0, 800.0, 900.0}) {
        narrow.push_back({d, jf::resistance_from_area(1100.0, 90.0, d)});
    }
    EXPECT_THROW(jf::fit_resistance_area(narrow), junctionlab::DegenerateModelError);
    pts[0].resistance_ohm = -1.0;
    EXPECT_THROW(jf::fit_resistance_area(pts), junctionlab::ParameterError);
}

TEST(FrequencyTrend, CollinearPointsHaveZeroResiduals) {
    std::vector<jf::SizeFrequencyPoint> pts;
    for (double d : {150.0, 200.0, 250.0, 300.0}) pts.push_back({d, 3.0 + 0.01 * d, ""});
    const auto t = jf::frequency_size_trend(pts);
    EXPECT_NEAR(t.fit.param("slope_GHz_per_nm"), 0.01, 1e-12);
    EXPECT_LT(t.max_abs_residual_GHz, 1e-10);
    EXPECT_TRUE(t.outside_band.empty());
    EXPECT_TRUE(t.groups.empty());
}

TEST(FrequencyTrend, FlagsPointsOutsideBand) {
    std::vector<jf::SizeFrequencyPoint> pts;
    const double scatter[] = {0.02, -0.03, 0.01, -0.02, 0.0, 0.3, -0.02, 0.01};
    for (int i = 0; i < 8; ++i) pts.push_back({150.0 + 25.0 * i, 3.5 + 0.008 * (150.0 + 25.0 * i) + scatter[i], ""});
    const auto t = jf::frequency_size_trend(pts);
    ASSERT_EQ(t.outside_band.size(), 1u);
    EXPECT_EQ(t.outside_band[0], 5u);
    EXPECT_GT(t.max_abs_residual_GHz, 0.1);
    EXPECT_THROW(jf::frequency_size_trend(std::span(pts).first(2)), junctionlab::InsufficientDataError);
}

TEST(FrequencyTrend, DetectsChipOffsets) {
    std::vector<jf::SizeFrequencyPoint> pts;
    for (int i = 0; i < 6; ++i) {
        const double d = 150.0 + 30.0 * i;
        pts.push_back({d, 3.5 + 0.008 * d + 0.5, "chipA"});
        pts.push_back({d + 15.0, 3.5 + 0.008 * (d + 15.0) - 0.5, "chipB"});
    }
    const auto t = jf::frequency_size_trend(pts);
    ASSERT_EQ(t.groups.size(), 2u);
    EXPECT_EQ(t.groups[0].group, "chipA");
    EXPECT_NEAR(t.groups[0].mean_residual_GHz, 0.5, 0.05);
    EXPECT_NEAR(t.groups[1].mean_residual_GHz, -0.5, 0.05);
    EXPECT_TRUE(t.groups[0].outside_band && t.groups[1].outside_band);
}

TEST(CoherenceStats, MeansCountsAndWarnings) {
    const std::vector<jf::CoherenceRecord> recs{
        {0.0, 36.0, 17.0, 42.0, 5.17},
        {600.0, 24.0, std::nullopt, 30.0, 5.17},
        {1200.0, 30.0, 20.0, 15.0, 5.17},
        {1800.0, std::nullopt, 16.0, std::nullopt, 5.17}};
    const auto s = jf::coherence_time_series_stats(recs);
    EXPECT_EQ(s.records, 4u);
    EXPECT_EQ(s.t1_us.count, 3u);
    EXPECT_EQ(s.t2_star_us.count, 3u);
    EXPECT_EQ(s.t2_echo_us.count, 3u);
    EXPECT_NEAR(s.time_averaged_t1_us, 30.0, 1e-12);
    EXPECT_NEAR(s.t1_us.std_dev, 6.0, 1e-12);
    EXPECT_EQ(s.t1_us.max, 36.0);
    EXPECT_EQ(s.f_ge_GHz.std_dev, 0.0);
    ASSERT_EQ(s.warnings.size(), 1u);
    EXPECT_FALSE(jf::echo_consistency_warning(17.0, 42.0).has_value());
}

TEST(CoherenceStats, Errors) {
    const std::vector<jf::CoherenceRecord> one{{0.0, 30.0, {}, {}, 5.0}};
    EXPECT_THROW(jf::coherence_time_series_stats(one), junctionlab::InsufficientDataError);
    const std::vector<jf::CoherenceRecord> bad{{0.0, 30.0, {}, {}, 5.0}, {1.0, -2.0, {}, {}, 5.0}};
    EXPECT_THROW(jf::coherence_time_series_stats(bad), junctionlab::ParameterError);
}

// ---------------------------------------------------------------------------
// Properties

namespace {

template <class Fit>
int count_recovered(Fit&& fit_once) {
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) ok += fit_once(seed) ? 1 : 0;
    return ok;
}

}  // namespace

TEST(FitRoundTripProperty, T1) {
    const int ok = count_recovered([](std::uint64_t s) {
        const auto r = jf::fit_t1(decay_trace(36.0, 0.9, 0.05, 0.01, s));
        return r.converged && within(r, "T1_us", 36.0) && within(r, "amplitude", 0.9);
    });
    EXPECT_GE(ok, 95);
}

TEST(FitRoundTripProperty, Echo) {
    const int ok = count_recovered([](std::uint64_t s) {
        const auto r = jf::fit_echo(decay_trace(42.0, 0.45, 0.5, 0.01, 1000 + s));
        return r.converged && within(r, "T2_echo_us", 42.0) && within(r, "offset", 0.5);
    });
    EXPECT_GE(ok, 95);
}

TEST(FitRoundTripProperty, Ramsey) {
    const int ok = count_recovered([](std::uint64_t s) {
        const auto r = jf::fit_ramsey(ramsey_trace(17.0, 0.5, 0.3, 0.01, 2000 + s));
        return r.converged && within(r, "T2_star_us", 17.0) && within(r, "detuning_MHz", 0.5);
    });
    EXPECT_GE(ok, 95);
}

TEST(FitRoundTripProperty, ResistanceArea) {
    const int ok = count_recovered([](std::uint64_t s) {
        const auto r = jf::fit_resistance_area(prober_points(1100.0, 90.0, 0.02, 3000 + s));
        return r.converged && within(r, "RA_ohm_um2", 1100.0) && within(r, "l_nm", 90.0);
    });
    EXPECT_GE(ok, 95);
}

TEST(FitRoundTripProperty, FrequencyTrend) {
    const int ok = count_recovered([](std::uint64_t s) {
        std::mt19937_64 rng(4000 + s);
        std::normal_distribution<double> eps(0.0, 0.03);
        std::vector<jf::SizeFrequencyPoint> pts;
        for (int i = 0; i < 12; ++i) {
            const double d = 150.0 + 20.0 * i;
            pts.push_back({d, 3.2 + 0.009 * d + eps(rng), ""});
        }
        const auto t = jf::frequency_size_trend(pts);
        return t.fit.converged && within(t.fit, "slope_GHz_per_nm", 0.009) &&
               within(t.fit, "intercept_GHz", 3.2);
    });
    EXPECT_GE(ok, 95);
}

TEST(FitJacobianProperty, AnalyticMatchesCentralDifferences) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.1, 2.0), t(0.0, 60.0), phi(-3.0, 3.0);
    const std::vector<jf::ParametricModel> models{jf::exponential_decay_model("T1_us"), jf::ramsey_model()};
    for (const auto& m : models) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> p;
            if (m.size() == 3) {
                p = {u(rng), 40.0 * u(rng), u(rng) - 1.0};
            } else {
                p = {u(rng), 20.0 * u(rng), u(rng), phi(rng), u(rng) - 1.0};
            }
            const double x = t(rng);
            std::vector<double> g(m.size());
            m.gradient(x, p, g);
            double scale = 0.0;
            for (double v : g) scale = std::max(scale, std::abs(v));
            for (std::size_t k = 0; k < p.size(); ++k) {
                // Five-point stencil; the step shrinks with x to follow the fringe period.
                const double h = 1e-4 * std::max(std::abs(p[k]), 1.0) / (1.0 + x);
                auto at = [&](double shift) {
                    auto q = p;
                    q[k] += shift;
                    return m.value(x, q);
                };
                const double fd = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
                EXPECT_NEAR(g[k], fd, 1e-6 * std::max(std::abs(g[k]), 1e-3 * scale))
                    << m.names[k] << " at x = " << x;
            }
        }
    }
}

TEST(FitScaleProperty, DecayAmplitudeEquivariance) {
    const auto base = decay_trace(36.0, 0.9, 0.05, 0.01, 77);
    const auto ref = jf::fit_t1(base);
    for (double k : {1e-3, 7.0, 1e4}) {
        std::vector<double> y(base.y().begin(), base.y().end());
        for (double& v : y) v *= k;
        const SampledTrace scaled(std::vector<double>(base.x().begin(), base.x().end()), y,
                                  AxisUnit::microsecond, ValueUnit::population);
        const auto r = jf::fit_t1(scaled);
        EXPECT_NEAR(r.param("T1_us"), ref.param("T1_us"), 1e-9 * ref.param("T1_us")) << k;
        EXPECT_NEAR(r.param("amplitude"), k * ref.param("amplitude"), 1e-9 * k * ref.param("amplitude"));
    }
}

TEST(FitQualityFactorProperty, LinearInEachArgument) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> f(1.0, 10.0), t1(1.0, 200.0), k(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double a = f(rng), b = t1(rng), c = k(rng);
        const double q = jf::quality_factor(a, b);
        EXPECT_NEAR(jf::quality_factor(c * a, b), c * q, 1e-14 * c * q);
        EXPECT_NEAR(jf::quality_factor(a, c * b), c * q, 1e-14 * c * q);
    }
}

TEST(FitResistanceOrderProperty, InvariantUnderPermutation) {
    auto pts = prober_points(1100.0, 90.0, 0.02, 55);
    const auto ref = jf::fit_resistance_area(pts);
    std::mt19937_64 rng(33);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(pts.begin(), pts.end(), rng);
        const auto r = jf::fit_resistance_area(pts);
        EXPECT_EQ(r.params, ref.params);
        EXPECT_EQ(r.std_errors, ref.std_errors);
    }
}
