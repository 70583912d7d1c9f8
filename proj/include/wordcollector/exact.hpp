#pragma once

#include <utility>
#include <vector>

#include "wordcollector/asymptotics.hpp"
#include "wordcollector/parallel.hpp"
#include "wordcollector/spectrum.hpp"

namespace wwc {

struct QuadratureSettings {
    double abs_tol = 1e-10;      // on the rescaled integrand
    double rel_tol = 1e-8;       // on the integral
    double tail_epsilon = 1e-12; // integrand bound at the truncation point
    int max_subdivisions = 1000000;
};

// ln of the probability that the collection is complete after t draws:
// sum over classes of M_i * ln(1 - exp(-p_i t)). -inf when some class is
// still missing with near certainty.
double log_survival(const ClassSpectrum& spectrum, double t);

struct ExactResult {
    double value = 0.0;       // +inf when above double range; see log_value
    double log_value = 0.0;
    double error_bound = 0.0; // absolute, same scale as value
    double tail_point = 0.0;  // rescaled truncation point T
    double tail_value = 0.0;  // integrand at T, <= tail_epsilon
    int panels = 0;
    long evaluations = 0;
};

// Expected number of draws until every word has been seen, by adaptive
// panel integration of the survival integrand. Deterministic; cost per
// integrand evaluation is linear in the number of weight classes, not in
// the number of words.
ExactResult waiting_time_exact_detailed(const ClassSpectrum& spectrum,
                                        const QuadratureSettings& settings = {},
                                        Execution exec = Execution::Parallel);

double waiting_time_exact(const ClassSpectrum& spectrum,
                          const QuadratureSettings& settings = {},
                          Execution exec = Execution::Parallel);

// Exact alternating-sum oracle over individual coupons; 2^m subsets, so
// m <= 20. Used by tests to pin the integral down independently.
double waiting_time_inclusion_exclusion(const ClassSpectrum& spectrum);

// Rescaled survival integrand: value in [0,1], 1 at t = 0, non-increasing.
// Converges to a step function dropping at t* as the collection grows.
double psi_value(const ClassSpectrum& spectrum, const ParameterPack& pack, double t);

std::vector<std::pair<double, double>> psi_curve(const ClassSpectrum& spectrum,
                                                 const ParameterPack& pack,
                                                 const std::vector<double>& t_grid,
                                                 Execution exec = Execution::Parallel);

}  // namespace wwc
