#include "wordcollector/simulate.hpp"

#include <cmath>
#include <unordered_set>

namespace wwc {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    unsigned __int128 wide = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(wide);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            wide = static_cast<unsigned __int128>(next()) * bound;
            low = static_cast<std::uint64_t>(wide);
        }
    }
    return static_cast<std::uint64_t>(wide >> 64);
}

SplitMix64 SplitMix64::trial_stream(std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 stream(seed ^ (0xd1342543de82ef95ULL * (trial + 1)));
    stream.next();  // decorrelate the raw seed material
    return stream;
}

ClassSampler::ClassSampler(const ClassSpectrum& spectrum) {
    if (mpz_sizeinbase(spectrum.m.get_mpz_t(), 2) > 62)
        throw DomainError("simulation needs m <= 2^62");
    const std::size_t k = spectrum.classes.size();
    sizes_.reserve(k);
    probabilities_.reserve(k);
    double sum = 0.0;
    for (const WeightClass& c : spectrum.classes) {
        const double q =
            std::exp(log_of(c.multiplicity) + c.log_weight - spectrum.log_mu);
        if (q == 0.0)
            throw PrecisionError("class probability underflowed to zero; n too large for "
                                 "float probabilities");
        probabilities_.push_back(q);
        sizes_.push_back(mpz_get_ui(c.multiplicity.get_mpz_t()));
        sum += q;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw DomainError("class probabilities do not normalize");
    total_ = mpz_get_ui(spectrum.m.get_mpz_t());

    // Vose alias construction.
    cutoff_.assign(k, 1.0);
    alias_.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) alias_[i] = static_cast<std::uint32_t>(i);
    std::vector<double> scaled(k);
    std::vector<std::size_t> small, large;
    for (std::size_t i = 0; i < k; ++i) {
        scaled[i] = probabilities_[i] * static_cast<double>(k) / sum;
        (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
        const std::size_t s = small.back();
        const std::size_t g = large.back();
        small.pop_back();
        large.pop_back();
        cutoff_[s] = scaled[s];
        alias_[s] = static_cast<std::uint32_t>(g);
        scaled[g] = (scaled[g] + scaled[s]) - 1.0;
        (scaled[g] < 1.0 ? small : large).push_back(g);
    }
    for (std::size_t i : small) cutoff_[i] = 1.0;
    for (std::size_t i : large) cutoff_[i] = 1.0;
}

std::size_t ClassSampler::sample_class(SplitMix64& rng) const {
    const std::size_t idx = static_cast<std::size_t>(rng.next_below(sizes_.size()));
    return rng.next_double() < cutoff_[idx] ? idx : alias_[idx];
}

namespace {

constexpr std::uint64_t kDenseSeenLimit = std::uint64_t(1) << 26;

// Seen-set per class: bit array for small classes, hash set beyond.
struct SeenSet {
    std::vector<std::uint64_t> bits;
    std::unordered_set<std::uint64_t> sparse;
    bool dense = true;

    explicit SeenSet(std::uint64_t size) {
        dense = size <= kDenseSeenLimit;
        if (dense) bits.assign((size + 63) / 64, 0);
    }

    bool insert(std::uint64_t idx) {
        if (dense) {
            std::uint64_t& word = bits[idx >> 6];
            const std::uint64_t mask = std::uint64_t(1) << (idx & 63);
            if (word & mask) return false;
            word |= mask;
            return true;
        }
        return sparse.insert(idx).second;
    }
};

}  // namespace

std::uint64_t simulate_once(const ClassSampler& sampler, std::uint64_t max_draws,
                            SplitMix64& rng) {
    const std::size_t k = sampler.num_classes();
    std::vector<SeenSet> seen;
    seen.reserve(k);
    for (std::size_t i = 0; i < k; ++i) seen.emplace_back(sampler.class_size(i));

    std::uint64_t unseen = sampler.total_words();
    std::uint64_t draws = 0;
    while (unseen > 0) {
        if (draws >= max_draws) {
            const double total = static_cast<double>(sampler.total_words());
            throw TimeoutError("trial hit its draw cap",
                               (total - static_cast<double>(unseen)) / total);
        }
        ++draws;
        const std::size_t c = sampler.sample_class(rng);
        const std::uint64_t idx = rng.next_below(sampler.class_size(c));
        if (seen[c].insert(idx)) --unseen;
    }
    return draws;
}

SimulationResult run_trials(const ClassSpectrum& spectrum, const SimulationConfig& config,
                            Execution exec) {
    if (config.trials < 1) throw DomainError("trials must be >= 1");
    const ClassSampler sampler(spectrum);

    const auto trials = static_cast<long long>(config.trials);
    std::vector<std::uint64_t> draws(config.trials, 0);
    std::vector<std::uint8_t> timed_out(config.trials, 0);
    const bool parallel = exec == Execution::Parallel && trials > 1;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::trial_stream(config.seed, static_cast<std::uint64_t>(t));
        try {
            draws[static_cast<std::size_t>(t)] =
                simulate_once(sampler, config.max_draws_per_trial, rng);
        } catch (const TimeoutError&) {
            timed_out[static_cast<std::size_t>(t)] = 1;
        }
    }

    std::vector<std::uint64_t> completed;
    for (std::size_t t = 0; t < config.trials; ++t)
        if (!timed_out[t]) completed.push_back(static_cast<std::uint64_t>(t));
    if (completed.size() != config.trials)
        throw PartialResultError("some trials hit the draw cap", std::move(completed));

    SimulationResult result;
    result.per_trial_draws = std::move(draws);
    result.seed = config.seed;
    double mean = 0.0;
    for (std::uint64_t d : result.per_trial_draws) mean += static_cast<double>(d);
    mean /= static_cast<double>(config.trials);
    result.mean = mean;
    if (config.trials == 1) {
        result.std_error = 0.0;
        result.degenerate_stats = true;
    } else {
        double ss = 0.0;
        for (std::uint64_t d : result.per_trial_draws) {
            const double delta = static_cast<double>(d) - mean;
            ss += delta * delta;
        }
        const double variance = ss / static_cast<double>(config.trials - 1);
        result.std_error = std::sqrt(variance / static_cast<double>(config.trials));
    }
    return result;
}

}  // namespace wwc
