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

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "junctionlab/circuit_spectra.hpp"
#include "junctionlab/coherence_fits.hpp"
#include "junctionlab/tunneling.hpp"

namespace jc = junctionlab::circuit;
namespace jt = junctionlab::tunneling;
namespace jf = junctionlab::fit;

static void BM_ChargeBasisSpectrum(benchmark::State& state) {
    const auto params = jc::reference_double_junction();
    const jc::TruncationSpec trunc{static_cast<int>(state.range(0)), 1e3};
    for (auto _ : state) {
        const auto h = jc::build_charge_hamiltonian(params, {}, trunc);
        benchmark::DoNotOptimize(jc::eigenspectrum(h, 6).f_ge);
    }
    state.SetLabel("dim " + std::to_string(trunc.dimension()));
}
BENCHMARK(BM_ChargeBasisSpectrum)->Arg(8)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_TransmonInversion(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(jc::invert_charging_energy(4.848, -0.208).charging_GHz);
    }
}
BENCHMARK(BM_TransmonInversion)->Unit(benchmark::kMillisecond);

static void BM_TunnelCurrent(benchmark::State& state) {
    const double gamma = state.range(0) == 0 ? 0.0 : 1e-4;
    const jt::JunctionDC sis{10.0, {0.2, gamma, 1.3157}, {1.42, gamma, 9.2}};
    double v = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(jt::tunnel_current(v, sis, 0.3));
        v = v > 2.5 ? 0.5 : v + 0.0137;
    }
}
BENCHMARK(BM_TunnelCurrent)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_RamseyFit(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> eps(0.0, 0.01);
    std::vector<double> t, y;
    for (int i = 0; i < 201; ++i) {
        t.push_back(0.25 * i);
        y.push_back(0.45 * std::exp(-t.back() / 17.0) * std::cos(2 * M_PI * 0.5 * t.back() + 0.3) +
                    0.5 + eps(rng));
    }
    const junctionlab::SampledTrace trace(t, y, junctionlab::AxisUnit::microsecond,
                                          junctionlab::ValueUnit::population);
    for (auto _ : state) benchmark::DoNotOptimize(jf::fit_ramsey(trace).params);
}
BENCHMARK(BM_RamseyFit)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
