/*
   Copyright 2026 The sphiso Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <benchmark/benchmark.h>

#include "sphiso/geometry.hpp"
#include "sphiso/rearrange.hpp"
#include "sphiso/sampling.hpp"
#include "sphiso/specfun.hpp"

using namespace sphiso;

static void BM_CapFraction(benchmark::State& state)
{
    Sphere const sphere(static_cast<int>(state.range(0)));
    double theta = 0.3;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(log_cap_fraction(sphere, theta));
        theta = theta < 2.8 ? theta + 0.01 : 0.3;
    }
}
BENCHMARK(BM_CapFraction)->Arg(3)->Arg(128)->Arg(1000);

static void BM_CapAngle(benchmark::State& state)
{
    Sphere const sphere(static_cast<int>(state.range(0)));
    double p = 0.01;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(cap_angle(sphere, p));
        p = p < 0.99 ? p + 0.013 : 0.01;
    }
}
BENCHMARK(BM_CapAngle)->Arg(128);

static void BM_SliceFraction(benchmark::State& state)
{
    Sphere const sphere(128);
    double phi = 0.6;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(log_slice_fraction(sphere, phi, 1.55, 1.2));
        phi = phi < 1.0 ? phi + 0.001 : 0.6;
    }
}
BENCHMARK(BM_SliceFraction);

static void BM_SampleSphere(benchmark::State& state)
{
    Sphere const sphere(static_cast<int>(state.range(0)));
    RandomStream stream(1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_sphere(sphere, stream));
}
BENCHMARK(BM_SampleSphere)->Arg(8)->Arg(128)->Arg(1000);

static void BM_CapSamplerLatitude(benchmark::State& state)
{
    CapSampler const sampler(Sphere(128), 1.0);
    RandomStream stream(1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sampler.latitude(stream.uniform()));
}
BENCHMARK(BM_CapSamplerLatitude);

static void BM_CapSamplerPoint(benchmark::State& state)
{
    Sphere const sphere(128);
    CapSampler const sampler(sphere, 1.0);
    SpherePoint const pole = SpherePoint::axis(sphere, 3);
    RandomStream stream(1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sampler(pole, stream));
}
BENCHMARK(BM_CapSamplerPoint);

static void BM_ZonalConvolve(benchmark::State& state)
{
    GridPtr const grid = make_grid(Sphere(16), static_cast<int>(state.range(0)));
    std::vector<double> values(grid->size());
    for (int i = 0; i < grid->size(); ++i)
        values[i] = i % 3 == 0 ? 1.0 : 0.0;
    ZonalFunction const f(grid, std::move(values));
    auto const kernel = MonotoneKernel::indicator(1.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(zonal_convolve(f, kernel, 1));
}
BENCHMARK(BM_ZonalConvolve)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
