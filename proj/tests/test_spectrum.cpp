#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wordcollector/languages.hpp"
#include "wordcollector/simulate.hpp"
#include "wordcollector/spectrum.hpp"

using namespace wwc;

namespace {

WeightClass make_class(std::vector<std::uint32_t> counts, const std::vector<double>& log_ws,
                       long mult) {
    SubComposition key = make_sub_composition(std::move(counts), log_ws);
    const double lw = key.log_weight;
    return WeightClass{std::move(key), BigInt(mult), lw};
}

}  // namespace

TEST_CASE("normalize divides by the minimum") {
    WeightAssignment a{{"a", "b"}, {2.0, 3.0}};
    const WeightAssignment out = normalize(a);
    CHECK(out.weights[0] == 1.0);
    CHECK(out.weights[1] == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("normalize keeps the all-unit case") {
    WeightAssignment a{{"a", "b"}, {1.0, 1.0}};
    const WeightAssignment out = normalize(a);
    CHECK(out.weights == std::vector<double>{1.0, 1.0});
}

TEST_CASE("normalize handles weights below one and groups units first") {
    WeightAssignment a{{"a", "b", "c"}, {0.5, 0.75, 1.25}};
    const WeightAssignment out = normalize(a);
    CHECK(out.letters == std::vector<std::string>{"a", "b", "c"});
    CHECK(out.weights[0] == 1.0);
    CHECK(out.weights[1] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(out.weights[2] == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(out.unit_count() == 1);

    WeightAssignment b{{"x", "y", "z"}, {2.0, 1.0, 1.0}};
    const WeightAssignment out_b = normalize(b);
    CHECK(out_b.letters == std::vector<std::string>{"y", "z", "x"});
    CHECK(out_b.weights == std::vector<double>{1.0, 1.0, 2.0});
}

TEST_CASE("normalize rejects non-positive weights") {
    CHECK_THROWS_AS(normalize(WeightAssignment{{"a"}, {0.0}}), InvalidAssignmentError);
    CHECK_THROWS_AS(normalize(WeightAssignment{{"a"}, {-1.0}}), InvalidAssignmentError);
    CHECK_THROWS_AS(normalize(WeightAssignment{{"a", "a"}, {1.0, 2.0}}), InvalidAssignmentError);
}

TEST_CASE("normalize is idempotent, exactly") {
    SplitMix64 rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        WeightAssignment a;
        const int k = 1 + static_cast<int>(rng.next_below(5));
        for (int i = 0; i < k; ++i) {
            a.letters.push_back(std::string(1, static_cast<char>('a' + i)));
            a.weights.push_back(0.1 + 4.0 * rng.next_double());
        }
        const WeightAssignment once = normalize(a);
        const WeightAssignment twice = normalize(once);
        CHECK(once.letters == twice.letters);
        CHECK(once.weights == twice.weights);
    }
}

TEST_CASE("build_spectrum sums multiplicities") {
    const std::vector<double> log_ws = {std::log(1.5)};
    std::vector<WeightClass> classes;
    classes.push_back(make_class({0}, log_ws, 1));
    classes.push_back(make_class({2}, log_ws, 6));
    const ClassSpectrum s = build_spectrum(std::move(classes), 2);
    CHECK(s.m == 7);
    CHECK(s.classes.size() == 2);
    CHECK(s.classes[0].log_weight == 0.0);
}

TEST_CASE("build_spectrum merges colliding distinct keys with a warning") {
    // 4^1 and 2^2 collide in weight but not in key
    const std::vector<double> log_ws = {std::log(4.0), std::log(2.0)};
    std::vector<WeightClass> classes;
    classes.push_back(make_class({1, 0}, log_ws, 3));
    classes.push_back(make_class({0, 2}, log_ws, 4));
    const ClassSpectrum s = build_spectrum(std::move(classes), 4);
    CHECK(s.classes.size() == 1);
    CHECK(s.classes[0].multiplicity == 7);
    CHECK(s.collision_warnings.size() == 1);
    // the shorter sub-composition is the one kept
    CHECK(s.classes[0].key.counts == std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("build_spectrum on the motzkin n=4 example") {
    const LanguageModel model = LanguageModel::motzkin(1.2, 1.5, 1.0);
    const ClassSpectrum s = motzkin_spectrum(model, 4);
    REQUIRE(s.classes.size() == 3);
    CHECK(s.classes[0].multiplicity == 1);
    CHECK(s.classes[1].multiplicity == 6);
    CHECK(s.classes[2].multiplicity == 2);
    CHECK(s.m == 9);
    CHECK(std::exp(s.classes[1].log_weight) == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(std::exp(s.classes[2].log_weight) == doctest::Approx(3.24).epsilon(1e-12));
    CHECK(std::exp(s.log_mu) == doctest::Approx(18.28).epsilon(1e-12));
}

TEST_CASE("build_spectrum rejects an empty class list") {
    CHECK_THROWS_AS(build_spectrum({}, 3), EmptyLanguageError);
}

TEST_CASE("class probabilities normalize") {
    SUBCASE("uniform one-class") {
        const std::vector<double> none;
        std::vector<WeightClass> classes;
        classes.push_back(make_class({}, none, 5));
        const ClassSpectrum s = build_spectrum(std::move(classes), 1);
        const auto probs = class_probabilities(s);
        REQUIRE(probs.size() == 1);
        CHECK(probs[0].log_p == doctest::Approx(-std::log(5.0)).epsilon(1e-15));
    }
    SUBCASE("two coupons with weights 1 and 2") {
        const std::vector<double> log_ws = {std::log(2.0)};
        std::vector<WeightClass> classes;
        classes.push_back(make_class({0}, log_ws, 1));
        classes.push_back(make_class({1}, log_ws, 1));
        const ClassSpectrum s = build_spectrum(std::move(classes), 1);
        const auto probs = class_probabilities(s);
        CHECK(std::exp(probs[0].log_p) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(std::exp(probs[1].log_p) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("motzkin n=4 example") {
        const LanguageModel model = LanguageModel::motzkin(1.2, 1.5, 1.0);
        const ClassSpectrum s = motzkin_spectrum(model, 4);
        const auto probs = class_probabilities(s);
        double total = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i)
            total += mpz_get_d(probs[i].multiplicity.get_mpz_t()) * std::exp(probs[i].log_p);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("spectrum invariants over random language draws") {
    SplitMix64 rng(20240817);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = 1 + static_cast<int>(rng.next_below(9));
        const double wa = 1.0 + rng.next_double() * 2.0;
        const double wabar = 1.0 + rng.next_double() * 2.0;
        ClassSpectrum s;
        switch (rng.next_below(3)) {
            case 0: s = motzkin_spectrum(LanguageModel::motzkin(wa, wabar, 1.0), n); break;
            case 1: s = rna_spectrum(LanguageModel::rna(1, wa, wabar, 1.0), n); break;
            default:
                s = sigma_star_spectrum(
                    LanguageModel::sigma_star(WeightAssignment{{"a", "b"}, {1.0, wa}}), n);
        }

        BigInt total(0);
        for (const auto& c : s.classes) total += c.multiplicity;
        CHECK(total == s.m);

        // log-sum-exp reproduces log_mu
        double lse = -std::numeric_limits<double>::infinity();
        for (const auto& c : s.classes) lse = log_add(lse, log_of(c.multiplicity) + c.log_weight);
        CHECK(std::abs(lse - s.log_mu) < 1e-12);

        for (std::size_t i = 1; i < s.classes.size(); ++i)
            CHECK(s.classes[i].log_weight - s.classes[i - 1].log_weight >=
                  kLogWeightMergeTolerance);

        // unit-weight-only words exist in all three families above
        CHECK(s.classes[0].log_weight == 0.0);

        double total_p = 0.0;
        for (const auto& p : class_probabilities(s))
            total_p += mpz_get_d(p.multiplicity.get_mpz_t()) * std::exp(p.log_p);
        CHECK(std::abs(total_p - 1.0) < 1e-10);
    }
}

TEST_CASE("log_of handles huge integers") {
    BigInt big;
    mpz_ui_pow_ui(big.get_mpz_t(), 3, 500);
    CHECK(log_of(big) == doctest::Approx(500.0 * std::log(3.0)).epsilon(1e-14));
}
