#pragma once

#include <cstdint>
#include <vector>

#include "wordcollector/parallel.hpp"
#include "wordcollector/spectrum.hpp"

namespace wwc {

// Counter-seeded 64-bit generator. Trial t draws from a stream derived
// from (seed, t) only, so results do not depend on scheduling.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound) by 128-bit multiply with rejection.
    std::uint64_t next_below(std::uint64_t bound);

    static SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial);
};

struct SimulationConfig {
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::uint64_t max_draws_per_trial = 10000000000ULL;
};

struct SimulationResult {
    std::vector<std::uint64_t> per_trial_draws;
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    bool degenerate_stats = false;  // single trial: no spread estimate
};

// Constant-time class sampler (alias table over class probabilities
// q_i = M_i * W_i / mu) plus the class sizes needed to pick a word
// uniformly inside the drawn class.
class ClassSampler {
public:
    explicit ClassSampler(const ClassSpectrum& spectrum);

    std::size_t sample_class(SplitMix64& rng) const;
    std::size_t num_classes() const { return sizes_.size(); }
    std::uint64_t class_size(std::size_t i) const { return sizes_[i]; }
    std::uint64_t total_words() const { return total_; }
    double class_probability(std::size_t i) const { return probabilities_[i]; }

private:
    std::vector<double> cutoff_;
    std::vector<std::uint32_t> alias_;
    std::vector<std::uint64_t> sizes_;
    std::vector<double> probabilities_;
    std::uint64_t total_ = 0;
};

// One realization of the collection: draws (class, index within class)
// until all words have been seen; words inside a class are equiprobable, so
// this is distributed exactly like drawing words.
std::uint64_t simulate_once(const ClassSampler& sampler, std::uint64_t max_draws,
                            SplitMix64& rng);

SimulationResult run_trials(const ClassSpectrum& spectrum, const SimulationConfig& config,
                            Execution exec = Execution::Parallel);

}  // namespace wwc
