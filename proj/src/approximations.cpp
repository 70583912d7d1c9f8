#include "wordcollector/approximations.hpp"

#include <cmath>
#include <numbers>

namespace wwc {

namespace {

constexpr double kDirectCut = 1e6;

double harmonic_direct(std::uint64_t n) {
    double h = 0.0;
    for (std::uint64_t i = n; i >= 1; --i) h += 1.0 / static_cast<double>(i);
    return h;
}

// H(r + M) - H(r) without cancellation: direct below the cutoff, log-ratio
// beyond, split at the cutoff when the range straddles it.
double harmonic_range(const BigInt& rank, const BigInt& mult) {
    const BigInt upper_big = rank + mult;
    const double r = mpz_get_d(rank.get_mpz_t());
    const double upper = mpz_get_d(upper_big.get_mpz_t());
    if (upper <= kDirectCut) {
        double h = 0.0;
        const auto lo = mpz_get_ui(rank.get_mpz_t());
        const auto hi = mpz_get_ui(upper_big.get_mpz_t());
        for (std::uint64_t i = lo + 1; i <= hi; ++i) h += 1.0 / static_cast<double>(i);
        return h;
    }
    if (r >= kDirectCut) {
        const double ratio = mpq_class(mult, rank).get_d();
        return std::log1p(ratio) + 0.5 * (1.0 / upper - 1.0 / r);
    }
    // straddle: direct up to the cutoff, expansion from there
    double h = 0.0;
    const auto lo = mpz_get_ui(rank.get_mpz_t());
    const auto cut = static_cast<std::uint64_t>(kDirectCut);
    for (std::uint64_t i = lo + 1; i <= cut; ++i) h += 1.0 / static_cast<double>(i);
    h += std::log(upper / kDirectCut) + 0.5 * (1.0 / upper - 1.0 / kDirectCut);
    return h;
}

}  // namespace

double harmonic_number(double x) {
    if (x < 0.0) throw DomainError("harmonic number needs x >= 0");
    if (x <= kDirectCut) return harmonic_direct(static_cast<std::uint64_t>(x));
    return std::log(x) + std::numbers::egamma + 0.5 / x;
}

double u2(const ClassSpectrum& spectrum) {
    double total = 0.0;
    BigInt rank(0);
    for (const WeightClass& c : spectrum.classes) {
        const double inv_p = std::exp(spectrum.log_mu - c.log_weight);
        total += harmonic_range(rank, c.multiplicity) * inv_p;
        rank += c.multiplicity;
    }
    return total;
}

ApproxReport check_bounds(const ClassSpectrum& spectrum, double exact) {
    if (spectrum.m < 16)
        throw BoundUndefinedError("the log-log bound needs m >= 16, got m = " +
                                  spectrum.m.get_str());
    ApproxReport report;
    report.u2 = u2(spectrum);
    report.m_float = std::exp(spectrum.log_m);
    const double loglog_m = std::log(spectrum.log_m);
    report.lower = report.u2 / (3.0 * std::numbers::e * loglog_m);
    report.upper = 2.0 * report.u2;
    report.satisfied = report.lower <= exact && exact <= report.upper;
    return report;
}

}  // namespace wwc
