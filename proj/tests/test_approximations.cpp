#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wordcollector/approximations.hpp"
#include "wordcollector/exact.hpp"
#include "wordcollector/languages.hpp"

using namespace wwc;

namespace {

ClassSpectrum make_coupon_spectrum(const std::vector<double>& weights) {
    const double min = *std::min_element(weights.begin(), weights.end());
    std::vector<WeightClass> classes;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double lw = std::log(weights[i] / min);
        SubComposition key;
        key.counts = {static_cast<std::uint32_t>(i)};
        key.size = i;
        key.log_weight = lw;
        classes.push_back(WeightClass{key, BigInt(1), lw});
    }
    return build_spectrum(std::move(classes), 1);
}

ClassSpectrum make_uniform_spectrum(long m) {
    SubComposition key;
    std::vector<WeightClass> classes;
    classes.push_back(WeightClass{key, BigInt(m), 0.0});
    return build_spectrum(std::move(classes), 1);
}

// Coupon-by-coupon evaluation; feasible only at small m.
double u2_per_coupon(const ClassSpectrum& s) {
    double total = 0.0;
    double rank = 0.0;
    for (const WeightClass& c : s.classes) {
        const double inv_p = std::exp(s.log_mu - c.log_weight);
        const double mult = mpz_get_d(c.multiplicity.get_mpz_t());
        for (double j = 1.0; j <= mult; j += 1.0) total += inv_p / (rank + j);
        rank += mult;
    }
    return total;
}

}  // namespace

TEST_CASE("harmonic number") {
    CHECK(harmonic_number(1) == 1.0);
    CHECK(harmonic_number(10) == doctest::Approx(2.9289682539682538).epsilon(1e-15));
    // the two branches agree across the cutoff
    const double direct = harmonic_number(1000000.0);
    const double expansion = std::log(1000001.0) + std::numbers::egamma + 0.5 / 1000001.0;
    CHECK(std::abs(harmonic_number(1000001.0) - expansion) == 0.0);
    CHECK(std::abs(direct + 1.0 / 1000001.0 - expansion) < 1e-11);
}

TEST_CASE("u2 on the uniform collection collapses to m H(m)") {
    const ClassSpectrum s = make_uniform_spectrum(3);
    CHECK(u2(s) == doctest::Approx(5.5).epsilon(1e-12));
}

TEST_CASE("u2 on two coupons in increasing-probability order") {
    const ClassSpectrum s = make_coupon_spectrum({1.0, 2.0});
    CHECK(u2(s) == doctest::Approx(3.75).epsilon(1e-12));
}

TEST_CASE("grouped u2 equals the per-coupon sum") {
    std::vector<ClassSpectrum> corpus;
    corpus.push_back(motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 8));
    corpus.push_back(motzkin_spectrum(LanguageModel::motzkin(1.0, 1.0, 1.3), 10));
    corpus.push_back(sigma_star_spectrum(
        LanguageModel::sigma_star(WeightAssignment{{"a", "b"}, {1.0, 1.5}}), 14));
    corpus.push_back(make_uniform_spectrum(100000));
    for (const ClassSpectrum& s : corpus)
        CHECK(std::abs(u2(s) - u2_per_coupon(s)) / u2_per_coupon(s) < 1e-10);
}

TEST_CASE("u2 is invariant under global weight scaling") {
    std::vector<double> weights = {1.0, 1.7, 2.9, 3.1, 1.3};
    const double base = u2(make_coupon_spectrum(weights));
    for (double c : {4.0, 0.5}) {
        std::vector<double> scaled = weights;
        for (double& w : scaled) w *= c;
        CHECK(std::abs(u2(make_coupon_spectrum(scaled)) - base) / base < 1e-10);
    }
}

TEST_CASE("sandwich bounds") {
    SUBCASE("uniform m=1000: u2 equals the exact value") {
        const ClassSpectrum s = make_uniform_spectrum(1000);
        const double exact = waiting_time_exact(s);
        const ApproxReport report = check_bounds(s, exact);
        CHECK(report.u2 == doctest::Approx(exact).epsilon(1e-8));
        CHECK(report.satisfied);
        CHECK(report.lower <= exact);
        CHECK(report.upper >= exact);
    }
    SUBCASE("holds across the spectrum corpus") {
        std::vector<ClassSpectrum> corpus;
        corpus.push_back(motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 10));
        corpus.push_back(sigma_star_spectrum(
            LanguageModel::sigma_star(WeightAssignment{{"a", "b"}, {1.0, 1.5}}), 14));
        corpus.push_back(nc_spectrum(LanguageModel::non_connected(1.2, 1.5, 1.0), 12));
        for (const ClassSpectrum& s : corpus) {
            const double exact = waiting_time_exact(s);
            CHECK(check_bounds(s, exact).satisfied);
        }
    }
    SUBCASE("needs m >= 16") {
        const ClassSpectrum s = make_uniform_spectrum(15);
        CHECK_THROWS_AS(check_bounds(s, 46.0), BoundUndefinedError);
        CHECK_NOTHROW(check_bounds(make_uniform_spectrum(16), 54.0));
    }
}
