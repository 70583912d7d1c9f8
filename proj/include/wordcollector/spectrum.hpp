#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wordcollector/errors.hpp"

namespace wwc {

// Multiplicities are exact: binomials overflow 64 bits well before the
// lengths this library targets.
using BigInt = mpz_class;

// Natural log of a positive big integer.
double log_of(const BigInt& value);

// Log-domain addition: log(exp(a) + exp(b)).
double log_add(double a, double b);

// Letters with positive multiplicative weights. The distribution over a
// language is invariant under scaling all weights, so the canonical form
// divides by the minimum: at least one weight is then exactly 1.
struct WeightAssignment {
    std::vector<std::string> letters;
    std::vector<double> weights;

    std::size_t size() const { return letters.size(); }
    // Number of unit-weight letters (valid on normalized assignments).
    std::size_t unit_count() const;
    // Indices of letters with weight > 1, in letter order.
    std::vector<std::size_t> non_unit_indices() const;
    bool is_uniform() const;
};

// Validates and rescales: weights divided by the minimum, unit-weight
// letters grouped first. Idempotent.
WeightAssignment normalize(const WeightAssignment& assignment);

// Rescale by the minimum but keep the letter order. Used by language
// models, whose alphabet order is fixed.
WeightAssignment normalize_keep_order(const WeightAssignment& assignment);

// Occurrence vector of the non-unit-weight letters of a word. Two words
// with the same sub-composition have the same weight.
struct SubComposition {
    std::vector<std::uint32_t> counts;
    std::uint64_t size = 0;      // sum of counts
    double log_weight = 0.0;     // sum counts[j] * ln(weight_j), >= 0

    bool operator==(const SubComposition& other) const { return counts == other.counts; }
};

// counts[j] pairs with non_unit_log_weights[j].
SubComposition make_sub_composition(std::vector<std::uint32_t> counts,
                                    const std::vector<double>& non_unit_log_weights);

// One distinct weight: its key, its exact word count, and ln W.
struct WeightClass {
    SubComposition key;
    BigInt multiplicity;
    double log_weight = 0.0;
};

// All distinct weights of a language at one length, sorted by strictly
// increasing log-weight. The sorted index is the weight's rank.
struct ClassSpectrum {
    std::vector<WeightClass> classes;
    int n = 0;
    BigInt m;              // total word count, = sum of multiplicities
    double log_m = 0.0;    // ln m
    double log_mu = 0.0;   // ln of the total weight of all words
    std::vector<std::string> collision_warnings;

    std::size_t num_classes() const { return classes.size(); }
};

// Classes whose log-weights differ by less than this are treated as one
// weight. Absolute, in log domain.
inline constexpr double kLogWeightMergeTolerance = 1e-12;

// Sorts by log-weight, merges classes at the same weight (a diagnostic is
// recorded when distinct keys collide), and fills m and log_mu.
ClassSpectrum build_spectrum(std::vector<WeightClass> classes, int n);

struct ClassProbability {
    double log_p = 0.0;    // ln(W_i) - ln(mu): probability of one word of the class
    BigInt multiplicity;
};

// Per-class word probabilities; sum of M_i * p_i is 1.
std::vector<ClassProbability> class_probabilities(const ClassSpectrum& spectrum);

}  // namespace wwc
