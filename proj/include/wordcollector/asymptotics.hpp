#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wordcollector/languages.hpp"
#include "wordcollector/spectrum.hpp"

namespace wwc {

inline constexpr std::int64_t kUnboundedIndex = INT64_MAX;
inline constexpr std::int64_t kDefaultProbeLimit = 10000;

// Shape of the leading growth factor G(n), for reporting.
enum class GrowthKind { LogN, N, LogM };

std::string growth_kind_name(GrowthKind kind);

// Everything the waiting-time estimate needs about one language and weight
// configuration at length n: the leading multiplicity exponent f1, the
// weight lower-bound factorization nu(i) * omega(n), and the h/H sequences
// kept for diagnostics. Sequences are 1-indexed.
struct ParameterPack {
    std::string description;
    std::function<double(std::int64_t)> f1;
    std::function<double(std::int64_t)> f2;      // null when absent
    std::function<double(std::int64_t)> log_nu;
    std::function<double(std::int64_t)> log_h;
    std::function<double(std::int64_t)> log_H;
    std::int64_t index_limit = kUnboundedIndex;  // finite when the index set is bounded
    int n = 0;
    GrowthKind g_kind = GrowthKind::LogN;
    double g1 = 0.0;        // value of G(n)
    double g2 = 0.0;        // secondary growth term, 0 when absent
    double sum_g = 0.0;     // g1 + g2; time scaling of the rescaled integrand
    double log_omega = 0.0; // ln omega(n)
};

struct TStarResult {
    double value = 0.0;
    std::int64_t argmax = 0;  // 1-based index attaining the max
    std::int64_t probed = 0;  // how far the scan went
};

// max of f1(i)/nu(i) over the index set. For unbounded index sets the scan
// stops once the ratio has stayed below max/10 for 50 consecutive indices;
// if that never happens within probe_limit, a NoConvergenceError is thrown.
// Ties break toward the smallest index.
TStarResult t_star(const std::function<double(std::int64_t)>& f1,
                   const std::function<double(std::int64_t)>& log_nu,
                   std::int64_t probe_limit = kDefaultProbeLimit,
                   std::int64_t index_limit = kUnboundedIndex);

TStarResult t_star(const ParameterPack& pack, std::int64_t probe_limit = kDefaultProbeLimit);

// Builds the pack for the model's weight configuration at length n, or
// throws UnsupportedConfigurationError when no stated result covers it.
ParameterPack parameter_pack(const LanguageModel& model, int n,
                             std::int64_t rank_budget = 2 * kDefaultProbeLimit);

struct AsymptoticEstimate {
    double t_star = 0.0;
    std::int64_t arg_i = 0;
    double log_scale = 0.0;     // ln(G(n) * mu(n) / omega(n))
    double estimate_log = 0.0;  // ln(t*) + log_scale
    double value = 0.0;         // exp(estimate_log); +inf when out of range
};

AsymptoticEstimate asymptotic_waiting_time(const ParameterPack& pack,
                                           const ClassSpectrum& spectrum,
                                           std::int64_t probe_limit = kDefaultProbeLimit);

// Sparse polynomial as (power, coefficient) terms.
using PolynomialTerms = std::vector<std::pair<int, double>>;

double evaluate_polynomial(const PolynomialTerms& terms, double z);

// First root in (0,1): scan in steps of 1e-3 for a sign change, bisect to
// 1e-13, check the residual of the max-|coefficient|-normalized polynomial.
double smallest_positive_root(const PolynomialTerms& terms);

// Characteristic polynomial whose smallest positive root is the inverse
// growth rate of the number of hairpin-constrained structures.
PolynomialTerms rna_count_polynomial(int theta);

// Weighted variant: pair_weight is the product of the two bracket weights.
// At pair_weight 1 it reduces to rna_count_polynomial term-by-term.
PolynomialTerms rna_weighted_polynomial(int theta, double pair_weight);

// Exponent triple of the waiting time as a function of the number of words
// m: value ~ const * m^p * (log m)^q * (loglog m)^r.
struct ScaleExponents {
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
};

ScaleExponents m_scale_exponents(const LanguageModel& model);

// Numeric diagnostics for the pack hypotheses, over a finite probe range.
struct PackDiagnostics {
    double sum_inv_H = 0.0;       // partial sum of 1/H(i); must stay bounded
    double tail_min_nu_over_f = 0.0;  // min of nu/f1 over the last decile
    double head_nu_over_f = 0.0;      // nu/f1 at the argmax
    bool nu_over_f_diverges = false;
};

PackDiagnostics pack_diagnostics(const ParameterPack& pack, std::int64_t probe = 2000);

}  // namespace wwc
