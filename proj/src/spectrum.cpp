#include "wordcollector/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wwc {

double log_of(const BigInt& value) {
    signed long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

std::size_t WeightAssignment::unit_count() const {
    std::size_t l = 0;
    for (double w : weights)
        if (w == 1.0) ++l;
    return l;
}

std::vector<std::size_t> WeightAssignment::non_unit_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] != 1.0) idx.push_back(i);
    return idx;
}

bool WeightAssignment::is_uniform() const {
    for (double w : weights)
        if (w != weights.front()) return false;
    return true;
}

namespace {

void validate(const WeightAssignment& a) {
    if (a.letters.size() != a.weights.size())
        throw InvalidAssignmentError("letters and weights differ in length");
    if (a.letters.empty())
        throw InvalidAssignmentError("assignment has no letters");
    for (std::size_t i = 0; i < a.weights.size(); ++i) {
        if (!(a.weights[i] > 0.0) || !std::isfinite(a.weights[i]))
            throw InvalidAssignmentError("non-positive weight for letter '" + a.letters[i] + "'");
    }
    for (std::size_t i = 0; i < a.letters.size(); ++i)
        for (std::size_t j = i + 1; j < a.letters.size(); ++j)
            if (a.letters[i] == a.letters[j])
                throw InvalidAssignmentError("duplicate letter '" + a.letters[i] + "'");
}

}  // namespace

WeightAssignment normalize_keep_order(const WeightAssignment& assignment) {
    validate(assignment);
    const double min = *std::min_element(assignment.weights.begin(), assignment.weights.end());
    WeightAssignment out = assignment;
    for (double& w : out.weights) w = w / min;
    return out;
}

WeightAssignment normalize(const WeightAssignment& assignment) {
    WeightAssignment scaled = normalize_keep_order(assignment);
    WeightAssignment out;
    out.letters.reserve(scaled.size());
    out.weights.reserve(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i)
        if (scaled.weights[i] == 1.0) {
            out.letters.push_back(scaled.letters[i]);
            out.weights.push_back(1.0);
        }
    for (std::size_t i = 0; i < scaled.size(); ++i)
        if (scaled.weights[i] != 1.0) {
            out.letters.push_back(scaled.letters[i]);
            out.weights.push_back(scaled.weights[i]);
        }
    return out;
}

SubComposition make_sub_composition(std::vector<std::uint32_t> counts,
                                    const std::vector<double>& non_unit_log_weights) {
    if (counts.size() != non_unit_log_weights.size())
        throw DomainError("sub-composition dimension mismatch");
    SubComposition sc;
    sc.size = 0;
    sc.log_weight = 0.0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        sc.size += counts[j];
        sc.log_weight += static_cast<double>(counts[j]) * non_unit_log_weights[j];
    }
    sc.counts = std::move(counts);
    return sc;
}

namespace {

std::string format_key(const SubComposition& key) {
    std::ostringstream os;
    os << "(";
    for (std::size_t j = 0; j < key.counts.size(); ++j) {
        if (j) os << ",";
        os << key.counts[j];
    }
    os << ")";
    return os.str();
}

}  // namespace

ClassSpectrum build_spectrum(std::vector<WeightClass> classes, int n) {
    if (classes.empty())
        throw EmptyLanguageError("no weight classes: language empty at length " + std::to_string(n));
    for (const WeightClass& c : classes)
        if (c.multiplicity < 1)
            throw DomainError("weight class with multiplicity < 1");

    std::sort(classes.begin(), classes.end(), [](const WeightClass& a, const WeightClass& b) {
        if (a.log_weight != b.log_weight) return a.log_weight < b.log_weight;
        if (a.key.size != b.key.size) return a.key.size < b.key.size;
        return a.key.counts < b.key.counts;
    });

    ClassSpectrum spectrum;
    spectrum.n = n;
    for (WeightClass& c : classes) {
        if (!spectrum.classes.empty() &&
            c.log_weight - spectrum.classes.back().log_weight < kLogWeightMergeTolerance) {
            WeightClass& prev = spectrum.classes.back();
            if (!(c.key == prev.key)) {
                spectrum.collision_warnings.push_back(
                    "weight collision: keys " + format_key(prev.key) + " and " + format_key(c.key) +
                    " share log-weight " + std::to_string(prev.log_weight) + "; classes merged");
            }
            prev.multiplicity += c.multiplicity;
            // prev.key already has the smaller size by the sort order
        } else {
            spectrum.classes.push_back(std::move(c));
        }
    }

    spectrum.m = 0;
    double lmu = -std::numeric_limits<double>::infinity();
    for (const WeightClass& c : spectrum.classes) {
        spectrum.m += c.multiplicity;
        lmu = log_add(lmu, log_of(c.multiplicity) + c.log_weight);
    }
    spectrum.log_m = log_of(spectrum.m);
    spectrum.log_mu = lmu;
    return spectrum;
}

std::vector<ClassProbability> class_probabilities(const ClassSpectrum& spectrum) {
    std::vector<ClassProbability> out;
    out.reserve(spectrum.classes.size());
    for (const WeightClass& c : spectrum.classes)
        out.push_back(ClassProbability{c.log_weight - spectrum.log_mu, c.multiplicity});
    return out;
}

}  // namespace wwc
