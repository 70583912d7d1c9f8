// Timing comparison of the OpenMP kernels against their serial runs and
// against the reference Simpson integrator.

#include <chrono>
#include <cstdio>
#include <functional>

#include "wordcollector/exact.hpp"
#include "wordcollector/languages.hpp"
#include "wordcollector/reference.hpp"
#include "wordcollector/simulate.hpp"

using namespace wwc;

namespace {

double time_once(const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double best_of(int reps, const std::function<void()>& body) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) best = std::min(best, time_once(body));
    return best;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-34s serial %9.4f s  parallel %9.4f s  speedup %5.2fx\n", name, serial,
                parallel, serial / parallel);
}

}  // namespace

int main() {
    {
        const ClassSpectrum s = motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 10);
        SimulationConfig config;
        config.trials = 2000;
        config.seed = 1;
        const double serial =
            best_of(3, [&] { run_trials(s, config, Execution::Serial); });
        const double parallel =
            best_of(3, [&] { run_trials(s, config, Execution::Parallel); });
        report("run_trials motzkin n=10 x2000", serial, parallel);
    }
    {
        const auto model = LanguageModel::sigma_star(WeightAssignment{{"a", "b"}, {1.0, 1.5}});
        const ClassSpectrum s = sigma_star_spectrum(model, 21);
        const ParameterPack pack = parameter_pack(model, 21);
        std::vector<double> grid;
        for (double t = 0.0; t <= 2.0; t += 0.0001) grid.push_back(t);
        const double serial = best_of(3, [&] { psi_curve(s, pack, grid, Execution::Serial); });
        const double parallel =
            best_of(3, [&] { psi_curve(s, pack, grid, Execution::Parallel); });
        report("psi_curve n=21, 20001 points", serial, parallel);
    }
    {
        const ClassSpectrum s = motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 256);
        QuadratureSettings tight;
        tight.rel_tol = 1e-12;
        const double serial =
            best_of(3, [&] { waiting_time_exact_detailed(s, tight, Execution::Serial); });
        const double parallel =
            best_of(3, [&] { waiting_time_exact_detailed(s, tight, Execution::Parallel); });
        report("waiting_time_exact motzkin n=256", serial, parallel);

        const ClassSpectrum small = motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 12);
        const double panel = best_of(3, [&] { waiting_time_exact(small); });
        const double simpson = best_of(3, [&] { waiting_time_reference(small); });
        std::printf("%-34s panels %9.4f s  simpson  %9.4f s  speedup %5.2fx\n",
                    "engine vs reference, motzkin n=12", panel, simpson, simpson / panel);
    }
    return 0;
}
