// SPDX-License-Identifier: Apache-2.0
//
// coprime-array: sparse planar array design, coarray analysis and DOA estimation
// Copyright (C) 2026 The coprime-array authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "coprime/doa.hpp"
#include "coprime/kernels.hpp"

using namespace coprime;

namespace
{
    struct SpectrumFixture
    {
        CMatrix basis;
        kernels::ProjectorPolynomial poly;
        std::vector<NormalizedDoa> points;
        int h = 7;

        explicit SpectrumFixture(double step)
        {
            const auto a = rcpa(CoprimePair(2, 3));
            const auto co = difference_coarray(a);
            const std::vector<NormalizedDoa> d{{0.1, 0.2}, {-0.3, 0.05}, {0.22, -0.4}};
            const auto cov = exact_covariance(a, d, std::vector<double>(3, 1.0), 0.1);
            const auto vc = build_virtual_covariance(lag_average(cov, co, h), h);
            basis = noise_subspace(vc.matrix, 3).basis;
            poly = kernels::projector_polynomial(basis, h);
            points = GridSpec::normalized(step).points(0.5);
        }
    };

    void BM_SpectrumSerial(benchmark::State &state)
    {
        const SpectrumFixture f(1.0 / double(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::music_spectrum_serial(f.basis, f.h, f.points));
        state.SetItemsProcessed(state.iterations() * long(f.points.size()));
    }

    void BM_SpectrumParallel(benchmark::State &state)
    {
        const SpectrumFixture f(1.0 / double(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::music_spectrum_parallel(f.poly, f.points));
        state.SetItemsProcessed(state.iterations() * long(f.points.size()));
    }

    std::vector<Lattice> big_array(int m, int n)
    {
        return rcpa(CoprimePair(m, n)).positions();
    }

    void BM_LagHistogramSerial(benchmark::State &state)
    {
        const auto p = big_array(int(state.range(0)), int(state.range(0)) + 1);
        int e = 0;
        for (const auto &q : p)
            e = std::max({e, q.x, q.y});
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::lag_histogram_serial(p, e, e));
    }

    void BM_LagHistogramParallel(benchmark::State &state)
    {
        const auto p = big_array(int(state.range(0)), int(state.range(0)) + 1);
        int e = 0;
        for (const auto &q : p)
            e = std::max({e, q.x, q.y});
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::lag_histogram_parallel(p, e, e));
    }

    void BM_GramSerial(benchmark::State &state)
    {
        const Eigen::MatrixXd g = Eigen::MatrixXd::Random(state.range(0), 73);
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::gram_serial(g));
    }

    void BM_GramParallel(benchmark::State &state)
    {
        const Eigen::MatrixXd g = Eigen::MatrixXd::Random(state.range(0), 73);
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::gram_parallel(g));
    }
}

BENCHMARK(BM_SpectrumSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectrumParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LagHistogramSerial)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LagHistogramParallel)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GramSerial)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramParallel)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
