#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wordcollector/exact.hpp"
#include "wordcollector/languages.hpp"
#include "wordcollector/reference.hpp"
#include "wordcollector/simulate.hpp"

using namespace wwc;

namespace {

// Spectrum of individual coupons with the given weights (distinct keys, so
// nothing merges unless the weights collide).
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

double harmonic(long m) {
    double h = 0.0;
    for (long i = m; i >= 1; --i) h += 1.0 / static_cast<double>(i);
    return h;
}

}  // namespace

TEST_CASE("log_survival closed forms") {
    SUBCASE("single coupon at t = ln 2") {
        const ClassSpectrum s = make_uniform_spectrum(1);
        CHECK(log_survival(s, std::log(2.0)) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
    }
    SUBCASE("uniform pair at large t") {
        const ClassSpectrum s = make_uniform_spectrum(2);
        CHECK(log_survival(s, 60.0) > -1e-9);
        CHECK(log_survival(s, 60.0) <= 0.0);
    }
    SUBCASE("two coupons 1/3, 2/3 at t = 3") {
        const ClassSpectrum s = make_coupon_spectrum({1.0, 2.0});
        const double expected = std::log1p(-std::exp(-1.0)) + std::log1p(-std::exp(-2.0));
        CHECK(log_survival(s, 3.0) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("rejects t <= 0") {
        const ClassSpectrum s = make_uniform_spectrum(2);
        CHECK_THROWS_AS(log_survival(s, 0.0), DomainError);
        CHECK_THROWS_AS(log_survival(s, -1.0), DomainError);
    }
}

TEST_CASE("waiting time on uniform collections is m H(m)") {
    for (long m : {1L, 2L, 10L, 100L, 1000L}) {
        const double expected = static_cast<double>(m) * harmonic(m);
        const double got = waiting_time_exact(make_uniform_spectrum(m));
        CHECK(got == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("waiting time for two coupons 1/3, 2/3 is 3.5") {
    const ClassSpectrum s = make_coupon_spectrum({1.0, 2.0});
    CHECK(waiting_time_exact(s) == doctest::Approx(3.5).epsilon(1e-8));
}

TEST_CASE("inclusion-exclusion oracle") {
    SUBCASE("one coupon") {
        CHECK(waiting_time_inclusion_exclusion(make_uniform_spectrum(1)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("uniform three coupons: 3 H(3)") {
        CHECK(waiting_time_inclusion_exclusion(make_uniform_spectrum(3)) ==
              doctest::Approx(5.5).epsilon(1e-12));
    }
    SUBCASE("two coupons 1/3, 2/3") {
        CHECK(waiting_time_inclusion_exclusion(make_coupon_spectrum({1.0, 2.0})) ==
              doctest::Approx(3.5).epsilon(1e-12));
    }
    SUBCASE("capped at m = 20") {
        CHECK_THROWS_AS(waiting_time_inclusion_exclusion(make_uniform_spectrum(21)),
                        OracleCapError);
    }
}

TEST_CASE("quadrature agrees with inclusion-exclusion on random small spectra") {
    SplitMix64 rng(99);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t m = 2 + rng.next_below(11);
        std::vector<double> weights;
        for (std::size_t i = 0; i < m; ++i) weights.push_back(1.0 + 3.0 * rng.next_double());
        const ClassSpectrum s = make_coupon_spectrum(weights);
        const double oracle = waiting_time_inclusion_exclusion(s);
        const double got = waiting_time_exact(s);
        CHECK(std::abs(got - oracle) / oracle < 1e-6);
    }
}

TEST_CASE("quadrature agrees with inclusion-exclusion on the motzkin n=4 spectrum") {
    const ClassSpectrum s = motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 4);
    const double oracle = waiting_time_inclusion_exclusion(s);
    CHECK(oracle == doctest::Approx(30.798783311).epsilon(1e-8));
    CHECK(waiting_time_exact(s) == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("reference simpson integrator agrees with the panel engine") {
    const ClassSpectrum motzkin8 = motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 8);
    const double panel = waiting_time_exact(motzkin8);
    const double simpson = waiting_time_reference(motzkin8);
    CHECK(panel == doctest::Approx(3546.77454543).epsilon(1e-6));
    CHECK(std::abs(panel - simpson) / panel < 1e-6);

    const ClassSpectrum uniform = make_uniform_spectrum(100);
    CHECK(std::abs(waiting_time_exact(uniform) - waiting_time_reference(uniform)) /
              waiting_time_exact(uniform) <
          1e-7);
}

TEST_CASE("nc n=8 exact value") {
    const ClassSpectrum s = nc_spectrum(LanguageModel::non_connected(1.2, 1.5, 1.0), 8);
    CHECK(s.m == 14);
    CHECK(waiting_time_exact(s) == doctest::Approx(49.1483977074).epsilon(1e-7));
}

TEST_CASE("adding a class strictly increases the waiting time") {
    SplitMix64 rng(424);
    for (int rep = 0; rep < 8; ++rep) {
        std::vector<double> weights;
        const std::size_t m = 2 + rng.next_below(6);
        for (std::size_t i = 0; i < m; ++i) weights.push_back(1.0 + 2.0 * rng.next_double());
        const double before = waiting_time_exact(make_coupon_spectrum(weights));
        weights.push_back(1.0 + 2.0 * rng.next_double());
        const double after = waiting_time_exact(make_coupon_spectrum(weights));
        CHECK(after > before);
    }
}

TEST_CASE("waiting time is invariant under weight scaling") {
    SplitMix64 rng(77);
    std::vector<double> weights;
    for (int i = 0; i < 9; ++i) weights.push_back(1.0 + 2.5 * rng.next_double());
    const double base = waiting_time_exact(make_coupon_spectrum(weights));
    for (double c : {3.0, 0.25, 17.5}) {
        std::vector<double> scaled = weights;
        for (double& w : scaled) w *= c;
        const double got = waiting_time_exact(make_coupon_spectrum(scaled));
        CHECK(std::abs(got - base) / base < 1e-10);
    }
}

TEST_CASE("tail bound honesty") {
    for (const ClassSpectrum& s :
         {make_uniform_spectrum(50), motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 10)}) {
        const ExactResult res = waiting_time_exact_detailed(s);
        CHECK(res.tail_value <= QuadratureSettings{}.tail_epsilon);
    }
}

TEST_CASE("subdivision budget exhaustion carries a partial estimate") {
    QuadratureSettings settings;
    settings.max_subdivisions = 4;
    settings.rel_tol = 1e-14;
    settings.abs_tol = 1e-16;
    const ClassSpectrum s = motzkin_spectrum(LanguageModel::motzkin(1.2, 1.5, 1.0), 8);
    CHECK_THROWS_AS(waiting_time_exact(s, settings), ConvergenceError);
    try {
        waiting_time_exact(s, settings);
    } catch (const ConvergenceError& e) {
        CHECK(e.partial_estimate > 0.0);
        CHECK(e.error_bound >= 0.0);
    }
}

TEST_CASE("psi value properties and anchors") {
    const auto uniform_model = LanguageModel::sigma_star(WeightAssignment{{"a", "b"}, {1.0, 1.0}});
    const auto weighted_model = LanguageModel::sigma_star(WeightAssignment{{"a", "b"}, {1.0, 1.5}});

    SUBCASE("psi(0) = 1") {
        const ClassSpectrum s = sigma_star_spectrum(uniform_model, 6);
        const ParameterPack pack = parameter_pack(uniform_model, 6);
        CHECK(psi_value(s, pack, 0.0) == 1.0);
    }
    SUBCASE("uniform family, m = 2^21, t = 1.3") {
        const ClassSpectrum s = sigma_star_spectrum(uniform_model, 21);
        const ParameterPack pack = parameter_pack(uniform_model, 21);
        const double v = psi_value(s, pack, 1.3);
        CHECK(v < 0.05);
        CHECK(v == doctest::Approx(0.0126112469888).epsilon(1e-9));
    }
    SUBCASE("weighted family, m = 2^21, t = 0.5") {
        const ClassSpectrum s = sigma_star_spectrum(weighted_model, 21);
        const ParameterPack pack = parameter_pack(weighted_model, 21);
        const double v = psi_value(s, pack, 0.5);
        CHECK(v > 0.95);
        CHECK(v == doctest::Approx(0.999999998268).epsilon(1e-9));
    }
    SUBCASE("psi is non-increasing and within [0,1]") {
        const ClassSpectrum s = sigma_star_spectrum(weighted_model, 12);
        const ParameterPack pack = parameter_pack(weighted_model, 12);
        double prev = 1.0;
        for (double t = 0.0; t <= 2.0; t += 0.05) {
            const double v = psi_value(s, pack, t);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
    SUBCASE("negative t rejected") {
        const ClassSpectrum s = sigma_star_spectrum(uniform_model, 4);
        const ParameterPack pack = parameter_pack(uniform_model, 4);
        CHECK_THROWS_AS(psi_value(s, pack, -0.1), DomainError);
    }
}

TEST_CASE("psi curves converge to a step around t*") {
    const auto uniform_model = LanguageModel::sigma_star(WeightAssignment{{"a", "b"}, {1.0, 1.0}});
    double before_prev = 0.0, after_prev = 1.0;
    for (int k : {3, 6, 9, 12, 15, 18, 21}) {
        const ClassSpectrum s = sigma_star_spectrum(uniform_model, k);
        const ParameterPack pack = parameter_pack(uniform_model, k);
        const double before = psi_value(s, pack, 0.8);   // t < t* = 1
        const double after = psi_value(s, pack, 1.2);    // t > t*
        CHECK(before > before_prev);
        CHECK(after < after_prev);
        before_prev = before;
        after_prev = after;
    }
    CHECK(before_prev > 0.99);
}

TEST_CASE("psi_curve on a trivial grid") {
    const auto model = LanguageModel::sigma_star(WeightAssignment{{"a", "b"}, {1.0, 1.0}});
    const ClassSpectrum s = sigma_star_spectrum(model, 4);
    const ParameterPack pack = parameter_pack(model, 4);
    const auto curve = psi_curve(s, pack, {0.0});
    REQUIRE(curve.size() == 1);
    CHECK(curve[0].first == 0.0);
    CHECK(curve[0].second == 1.0);
    CHECK_THROWS_AS(psi_curve(s, pack, {1.0, 0.5}), DomainError);
}
