// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "ptq/classical.hpp"
#include "ptq/quantum.hpp"
#include "ptq/reservoir.hpp"
#include "ptq/scattering.hpp"
#include "ptq/sweep.hpp"

using namespace ptq;

namespace {

const CouplerParams kParams = CouplerParams::symmetric(1.0, 2.5);

PropagationGrid grid(const benchmark::State& state) { return PropagationGrid(10.0, static_cast<int>(state.range(0))); }

template <bool Parallel>
void scattering(benchmark::State& state) {
    const auto g = grid(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? scattering_curve(kParams, g) : scattering_curve_serial(kParams, g));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void classical(benchmark::State& state) {
    const auto g = grid(state);
    const auto input = ClassicalInput::BalancedOrthogonal;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? classical_power_curve(kParams, input, g)
                                          : classical_power_curve_serial(kParams, input, g));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void survival_markovian(benchmark::State& state) {
    const auto g = grid(state);
    const TwoPhotonInput input = PolarizationEntangled(kPi / 3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? survival_curve(kParams, input, g, MarkovianBackend{})
                                          : survival_curve_serial(kParams, input, g, MarkovianBackend{}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void survival_lattice(benchmark::State& state) {
    const PropagationGrid g(3.0, 301);
    const auto params = CouplerParams::symmetric(1.0, 0.0);
    const Backend backend = LatticeBackend{LatticeReservoir(20.0, 5.0, static_cast<int>(state.range(0)))};
    const TwoPhotonInput input = PolarizationEntangled(kPi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? survival_curve(params, input, g, backend)
                                          : survival_curve_serial(params, input, g, backend));
    }
}

template <bool Parallel>
void sweep(benchmark::State& state) {
    SweepConfig config;
    for (int i = 0; i <= 50; ++i) config.loss.push_back(0.1 * i);
    config.phi = {0.0, kPi / 2.0, kPi};
    for (int i = 0; i <= static_cast<int>(state.range(0)); ++i) config.z.push_back(0.05 * i);
    config.observables = {Observable::ClassicalPower, Observable::MeanPhotonNumber, Observable::PBoson,
                          Observable::PEntangled,     Observable::PFermion,         Observable::EpRegime,
                          Observable::EigenvalueGap};
    for (auto _ : state) benchmark::DoNotOptimize(Parallel ? run_sweep(config) : run_sweep_serial(config));
}

}  // namespace

BENCHMARK(scattering<false>)->Name("scattering_curve/serial")->Arg(1001)->Arg(100001);
BENCHMARK(scattering<true>)->Name("scattering_curve/openmp")->Arg(1001)->Arg(100001);
BENCHMARK(classical<false>)->Name("classical_power_curve/serial")->Arg(1001)->Arg(100001);
BENCHMARK(classical<true>)->Name("classical_power_curve/openmp")->Arg(1001)->Arg(100001);
BENCHMARK(survival_markovian<false>)->Name("survival_curve_markovian/serial")->Arg(1001)->Arg(100001);
BENCHMARK(survival_markovian<true>)->Name("survival_curve_markovian/openmp")->Arg(1001)->Arg(100001);
BENCHMARK(survival_lattice<false>)->Name("survival_curve_lattice/serial")->Arg(310)->Unit(benchmark::kMillisecond);
BENCHMARK(survival_lattice<true>)->Name("survival_curve_lattice/openmp")->Arg(310)->Unit(benchmark::kMillisecond);
BENCHMARK(sweep<false>)->Name("run_sweep/serial")->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(sweep<true>)->Name("run_sweep/openmp")->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
