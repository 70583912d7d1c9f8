#pragma once

#include <string>
#include <vector>

#include "wordcollector/spectrum.hpp"

namespace wwc {

enum class Language { SigmaStar, Motzkin, Rna, NonConnected };

std::string language_name(Language lang);

// Default cap on brute-force word enumeration; beyond it only the closed
// forms run.
inline constexpr int kDefaultOracleCap = 14;

// One of the four built-in language families together with a weight
// assignment over its alphabet. The three bracket languages use the fixed
// alphabet {a, abar, b}; SigmaStar takes the assignment's letters as its
// alphabet. Weights are rescaled so the minimum is 1, letter order kept.
struct LanguageModel {
    Language kind = Language::SigmaStar;
    int theta = 1;  // Rna only: minimal enclosed length of a matched pair
    WeightAssignment assignment;

    static LanguageModel sigma_star(WeightAssignment assignment);
    static LanguageModel motzkin(double wa, double wabar, double wb);
    static LanguageModel rna(int theta, double wa, double wabar, double wb);
    static LanguageModel non_connected(double wa, double wabar, double wb);
    // Generic builder used by the CLI: the three-letter languages expect
    // exactly the letters {a, abar, b}.
    static LanguageModel make(Language kind, WeightAssignment assignment, int theta = 1);

    // Single-character symbol used in enumerated words for letter index i.
    char symbol(std::size_t letter_index) const;
};

// Closed-form spectra.
ClassSpectrum sigma_star_spectrum(const LanguageModel& model, int n);
ClassSpectrum motzkin_spectrum(const LanguageModel& model, int n);
ClassSpectrum rna_spectrum(const LanguageModel& model, int n);
ClassSpectrum nc_spectrum(const LanguageModel& model, int n);

// Dispatch on model.kind.
ClassSpectrum language_spectrum(const LanguageModel& model, int n);

// Exhaustive, duplicate-free list of words of length n, by direct grammar
// expansion. Correctness oracle for the closed forms.
std::vector<std::string> enumerate_words(const LanguageModel& model, int n,
                                         int oracle_cap = kDefaultOracleCap);

// Groups words by sub-composition over the non-unit letters. Must agree
// class-for-class with the closed-form spectrum.
ClassSpectrum spectrum_from_words(const std::vector<std::string>& words,
                                  const LanguageModel& model);

// Exact word count at length n (sum of class multiplicities).
BigInt word_count(const LanguageModel& model, int n);

}  // namespace wwc
