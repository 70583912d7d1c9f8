#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wordcollector/exact.hpp"
#include "wordcollector/languages.hpp"
#include "wordcollector/simulate.hpp"

using namespace wwc;

// The parallel kernels must reproduce the serial path bit for bit: trials
// use per-index streams, panels and grid points are written by slot.

TEST_CASE("run_trials: serial and parallel agree exactly") {
    const ClassSpectrum s = motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 8);
    SimulationConfig config;
    config.trials = 300;
    config.seed = 808;
    const SimulationResult serial = run_trials(s, config, Execution::Serial);
    const SimulationResult parallel = run_trials(s, config, Execution::Parallel);
    CHECK(serial.per_trial_draws == parallel.per_trial_draws);
    CHECK(serial.mean == parallel.mean);
    CHECK(serial.std_error == parallel.std_error);
}

TEST_CASE("waiting_time_exact: serial and parallel agree exactly") {
    std::vector<ClassSpectrum> corpus;
    corpus.push_back(motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 32));
    corpus.push_back(sigma_star_spectrum(
        LanguageModel::sigma_star(WeightAssignment{{"a", "b"}, {1.0, 1.5}}), 40));
    corpus.push_back(nc_spectrum(LanguageModel::non_connected(1.2, 1.5, 1.0), 20));
    for (const ClassSpectrum& s : corpus) {
        const ExactResult serial = waiting_time_exact_detailed(s, {}, Execution::Serial);
        const ExactResult parallel = waiting_time_exact_detailed(s, {}, Execution::Parallel);
        CHECK(serial.value == parallel.value);
        CHECK(serial.log_value == parallel.log_value);
        CHECK(serial.panels == parallel.panels);
    }
}

TEST_CASE("psi_curve: serial and parallel agree exactly") {
    const auto model = LanguageModel::sigma_star(WeightAssignment{{"a", "b"}, {1.0, 1.5}});
    const ClassSpectrum s = sigma_star_spectrum(model, 18);
    const ParameterPack pack = parameter_pack(model, 18);
    std::vector<double> grid;
    for (double t = 0.0; t <= 2.0; t += 0.001) grid.push_back(t);
    const auto serial = psi_curve(s, pack, grid, Execution::Serial);
    const auto parallel = psi_curve(s, pack, grid, Execution::Parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].first == parallel[i].first);
        CHECK(serial[i].second == parallel[i].second);
    }
}
