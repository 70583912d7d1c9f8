#include "wordcollector/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

namespace wwc {

std::string growth_kind_name(GrowthKind kind) {
    switch (kind) {
        case GrowthKind::LogN: return "log n";
        case GrowthKind::N: return "n";
        case GrowthKind::LogM: return "log m";
    }
    return "?";
}

namespace {

constexpr int kDecayStreak = 50;   // consecutive indices below max/10 that end the scan
constexpr double kDecayFactor = 0.1;
// Ratios this close count as a tie (broken toward the smaller index); exact
// ties drift by an ulp through exp/log.
constexpr double kTieRelTol = 1e-14;

double ratio_at(const std::function<double(std::int64_t)>& f1,
                const std::function<double(std::int64_t)>& log_nu, std::int64_t i) {
    const double f = f1(i);
    if (f <= 0.0) return 0.0;
    return std::exp(std::log(f) - log_nu(i));
}

}  // namespace

TStarResult t_star(const std::function<double(std::int64_t)>& f1,
                   const std::function<double(std::int64_t)>& log_nu,
                   std::int64_t probe_limit, std::int64_t index_limit) {
    if (probe_limit < 1) throw DomainError("probe_limit must be >= 1");
    const std::int64_t stop = std::min(probe_limit, index_limit);
    double best = -1.0;
    std::int64_t arg = 0;
    int streak = 0;
    std::int64_t i = 1;
    for (; i <= stop; ++i) {
        const double r = ratio_at(f1, log_nu, i);
        if (r > best + std::abs(best) * kTieRelTol) {
            best = r;
            arg = i;
            streak = 0;
        } else if (r < best * kDecayFactor) {
            if (++streak >= kDecayStreak) break;
        } else {
            streak = 0;
        }
    }
    if (i > stop && stop < index_limit && streak < kDecayStreak) {
        throw NoConvergenceError(
            "t* ratio still live at probe limit " + std::to_string(probe_limit) +
            "; the weights may grow too slowly against the multiplicities (raise the probe limit)");
    }
    return TStarResult{best, arg, std::min(i, stop)};
}

TStarResult t_star(const ParameterPack& pack, std::int64_t probe_limit) {
    return t_star(pack.f1, pack.log_nu, probe_limit, pack.index_limit);
}

namespace {

// Ranked sub-compositions over the non-unit letters: sizes and log-weights
// sorted by increasing weight, deduplicated at equal weight keeping the
// smallest size. This realizes the ordering function explicitly.
struct RankedSubCompositions {
    std::vector<double> sizes;
    std::vector<double> log_weights;
};

RankedSubCompositions rank_sub_compositions(const std::vector<double>& log_ws,
                                            std::int64_t rank_budget) {
    const std::size_t d = log_ws.size();
    // Per-dimension bound large enough that the weight-sorted prefix below
    // is complete for at least rank_budget ranks.
    long bound = 0;
    if (d == 1) {
        bound = static_cast<long>(rank_budget);
    } else {
        double fact = 1.0;
        for (std::size_t j = 2; j <= d; ++j) fact *= static_cast<double>(j);
        bound = static_cast<long>(std::ceil(std::pow(static_cast<double>(rank_budget) * fact,
                                                     1.0 / static_cast<double>(d)))) +
                static_cast<long>(d);
    }

    std::vector<std::pair<double, double>> entries;  // (log_weight, size)
    std::vector<long> x(d, 0);
    auto rec = [&](auto&& self, std::size_t dim, long used, double lw) -> void {
        if (dim == d) {
            entries.emplace_back(lw, static_cast<double>(used));
            return;
        }
        for (long v = 0; used + v <= bound; ++v)
            self(self, dim + 1, used + v, lw + static_cast<double>(v) * log_ws[dim]);
    };
    rec(rec, 0, 0, 0.0);

    std::sort(entries.begin(), entries.end());
    const double min_lw = *std::min_element(log_ws.begin(), log_ws.end());
    const double complete_below = static_cast<double>(bound + 1) * min_lw;

    RankedSubCompositions out;
    for (const auto& [lw, size] : entries) {
        if (lw >= complete_below) break;
        if (!out.log_weights.empty() && lw - out.log_weights.back() < kLogWeightMergeTolerance)
            continue;  // same weight, keep the smaller size seen first
        out.log_weights.push_back(lw);
        out.sizes.push_back(size);
    }
    return out;
}

ParameterPack uniform_pack(const LanguageModel& model, int n) {
    ParameterPack pack;
    pack.description = "uniform collection";
    pack.f1 = [](std::int64_t) { return 1.0; };
    pack.log_nu = [](std::int64_t) { return 0.0; };
    pack.log_h = [](std::int64_t) { return 0.0; };
    pack.log_H = [](std::int64_t) { return 0.0; };
    pack.index_limit = 1;
    pack.n = n;
    pack.g_kind = GrowthKind::LogM;
    pack.g1 = log_of(word_count(model, n));
    pack.g2 = 0.0;
    pack.sum_g = pack.g1;
    pack.log_omega = 0.0;
    return pack;
}

double lfact(double x) { return std::lgamma(x + 1.0); }

ParameterPack sigma_star_pack(const LanguageModel& model, int n, std::int64_t rank_budget) {
    const WeightAssignment& a = model.assignment;
    const std::vector<std::size_t> non_unit = a.non_unit_indices();
    if (non_unit.empty()) return uniform_pack(model, n);

    const std::size_t l = a.unit_count();
    std::vector<double> log_ws;
    log_ws.reserve(non_unit.size());
    for (std::size_t idx : non_unit) log_ws.push_back(std::log(a.weights[idx]));

    auto ranked = std::make_shared<RankedSubCompositions>(rank_sub_compositions(log_ws, rank_budget));
    const double z = *std::min_element(log_ws.begin(), log_ws.end()) /
                     *std::max_element(log_ws.begin(), log_ws.end());

    ParameterPack pack;
    pack.n = n;
    pack.index_limit = static_cast<std::int64_t>(ranked->sizes.size());
    pack.log_nu = [ranked](std::int64_t i) { return ranked->log_weights[i - 1]; };
    if (l == 1) {
        pack.description = "sigma-star, one letter of smallest weight";
        pack.f1 = [ranked](std::int64_t i) { return ranked->sizes[i - 1]; };
        pack.log_h = [ranked](std::int64_t i) { return lfact(ranked->sizes[i - 1]); };
        pack.log_H = [ranked, z](std::int64_t i) { return lfact(z * ranked->sizes[i - 1]); };
        pack.g_kind = GrowthKind::LogN;
        pack.g1 = std::log(static_cast<double>(n));
        pack.sum_g = pack.g1;
    } else {
        const double log_l = std::log(static_cast<double>(l));
        pack.description = "sigma-star, several letters of smallest weight";
        pack.f1 = [log_l](std::int64_t) { return log_l; };
        pack.f2 = [ranked](std::int64_t i) { return ranked->sizes[i - 1]; };
        pack.log_h = [ranked, log_l](std::int64_t i) {
            return ranked->sizes[i - 1] * log_l + lfact(ranked->sizes[i - 1]);
        };
        pack.log_H = [ranked, log_l, z](std::int64_t i) {
            return z * ranked->sizes[i - 1] * log_l + lfact(z * ranked->sizes[i - 1]);
        };
        pack.g_kind = GrowthKind::N;
        pack.g1 = static_cast<double>(n);
        pack.g2 = std::log(static_cast<double>(n));
        pack.sum_g = pack.g1 + pack.g2;
    }
    return pack;
}

// Shared by the Motzkin and hairpin families: classes ranked by the number
// of bracket pairs, weight ratio q per pair.
void fill_pair_ranked(ParameterPack& pack, double q, int n) {
    const double log_q = std::log(q);
    pack.f1 = [](std::int64_t i) { return 2.0 * static_cast<double>(i - 1); };
    pack.log_nu = [log_q](std::int64_t i) { return static_cast<double>(i - 1) * log_q; };
    pack.g_kind = GrowthKind::LogN;
    pack.g1 = std::log(static_cast<double>(n));
    pack.sum_g = pack.g1;
    pack.log_omega = 0.0;
}

ParameterPack motzkin_pack(const LanguageModel& model, int n) {
    const double wa = model.assignment.weights[0];
    const double wabar = model.assignment.weights[1];
    const double wb = model.assignment.weights[2];
    const double q = wa * wabar;
    if (model.assignment.is_uniform()) return uniform_pack(model, n);

    ParameterPack pack;
    pack.n = n;
    if (wb == 1.0 && q > 1.0) {
        pack.description = "motzkin, neutral letter lightest";
        fill_pair_ranked(pack, q, n);
        pack.log_h = [](std::int64_t i) {
            return std::log(static_cast<double>(i)) + 2.0 * lfact(static_cast<double>(i - 1));
        };
        pack.log_H = pack.log_h;
        return pack;
    }
    if (wa == 1.0 && wabar == 1.0 && wb > 1.0) {
        pack.description = "motzkin, bracket letters lightest";
        const double log_wb = std::log(wb);
        pack.f1 = [](std::int64_t) { return std::numbers::ln2; };
        pack.f2 = [](std::int64_t i) { return 2.0 * static_cast<double>(i - 1) - 1.5; };
        pack.log_nu = [log_wb](std::int64_t i) {
            return 2.0 * static_cast<double>(i - 1) * log_wb;
        };
        pack.log_h = [](std::int64_t i) {
            return 0.5 * std::log(std::numbers::pi) +
                   (2.0 * static_cast<double>(i - 1) - 1.5) * std::numbers::ln2 +
                   lfact(2.0 * static_cast<double>(i - 1));
        };
        pack.log_H = pack.log_h;
        pack.g_kind = GrowthKind::N;
        pack.g1 = static_cast<double>(n);
        pack.g2 = std::log(static_cast<double>(n));
        pack.sum_g = pack.g1 + pack.g2;
        return pack;
    }
    if (wb > 1.0 && q > 1.0 && wb * wb == q)
        throw UnsupportedConfigurationError(
            "motzkin configuration sits on the boundary pi_b^2 = pi_a*pi_abar, which no "
            "stated result covers");
    throw UnsupportedConfigurationError(
        "motzkin configuration not covered: need pi_b = 1 with pi_a*pi_abar > 1, or "
        "pi_a = pi_abar = 1 < pi_b");
}

ParameterPack rna_pack(const LanguageModel& model, int n) {
    const double wa = model.assignment.weights[0];
    const double wabar = model.assignment.weights[1];
    const double wb = model.assignment.weights[2];
    const double q = wa * wabar;
    if (model.assignment.is_uniform()) return uniform_pack(model, n);
    if (!(wb == 1.0 && q > 1.0))
        throw UnsupportedConfigurationError(
            "rna configuration not covered: need pi_b = 1 and pi_a*pi_abar > 1");
    ParameterPack pack;
    pack.n = n;
    pack.description = "hairpin structures, neutral letter lightest";
    fill_pair_ranked(pack, q, n);
    pack.log_h = [](std::int64_t i) {
        return std::log(static_cast<double>(i)) + 2.0 * lfact(static_cast<double>(i - 1));
    };
    pack.log_H = [](std::int64_t i) {
        return std::log(static_cast<double>(i) / 2.0) + 2.0 * lfact(static_cast<double>(i - 1));
    };
    return pack;
}

ParameterPack nc_pack(const LanguageModel& model, int n) {
    const double wa = model.assignment.weights[0];
    const double wabar = model.assignment.weights[1];
    const double wb = model.assignment.weights[2];
    if (wa == wabar) return uniform_pack(model, n);  // every word has the same weight
    if (!(wb == 1.0 && wa < wabar))
        throw UnsupportedConfigurationError(
            "nc configuration not covered: need pi_b = 1 <= pi_a < pi_abar");
    ParameterPack pack;
    pack.n = n;
    pack.description = "non-strongly-connected language";
    const double log_ratio = std::log(wabar / wa);
    pack.f1 = [](std::int64_t) { return std::numbers::ln2; };
    pack.f2 = [](std::int64_t) { return -1.5; };
    pack.log_nu = [log_ratio](std::int64_t i) { return static_cast<double>(i) * log_ratio; };
    pack.log_h = [](std::int64_t i) {
        return static_cast<double>(i) * std::numbers::ln2 - std::log(static_cast<double>(i)) +
               0.5 * std::log(std::numbers::pi / 2.0);
    };
    pack.log_H = [](std::int64_t i) {
        return static_cast<double>(i - 1) * std::numbers::ln2 - std::log(static_cast<double>(i)) +
               0.5 * std::log(std::numbers::pi / 2.0);
    };
    pack.index_limit = std::max<std::int64_t>(1, n / 2);
    pack.g_kind = GrowthKind::N;
    pack.g1 = static_cast<double>(n);
    pack.g2 = std::log(static_cast<double>(n));
    pack.sum_g = pack.g1 + pack.g2;
    pack.log_omega = 0.5 * static_cast<double>(n) * std::log(wa);
    return pack;
}

}  // namespace

ParameterPack parameter_pack(const LanguageModel& model, int n, std::int64_t rank_budget) {
    if (n < 1) throw DomainError("parameter pack needs n >= 1");
    switch (model.kind) {
        case Language::SigmaStar: return sigma_star_pack(model, n, rank_budget);
        case Language::Motzkin: return motzkin_pack(model, n);
        case Language::Rna: return rna_pack(model, n);
        case Language::NonConnected: return nc_pack(model, n);
    }
    throw DomainError("unknown language");
}

AsymptoticEstimate asymptotic_waiting_time(const ParameterPack& pack,
                                           const ClassSpectrum& spectrum,
                                           std::int64_t probe_limit) {
    const TStarResult ts = t_star(pack, probe_limit);
    AsymptoticEstimate est;
    est.t_star = ts.value;
    est.arg_i = ts.argmax;
    est.log_scale = std::log(pack.g1) + spectrum.log_mu - pack.log_omega;
    est.estimate_log = std::log(ts.value) + est.log_scale;
    est.value = std::exp(est.estimate_log);
    return est;
}

double evaluate_polynomial(const PolynomialTerms& terms, double z) {
    double acc = 0.0;
    for (const auto& [power, coeff] : terms) acc += coeff * std::pow(z, power);
    return acc;
}

double smallest_positive_root(const PolynomialTerms& terms) {
    double max_coeff = 0.0;
    for (const auto& [power, coeff] : terms) max_coeff = std::max(max_coeff, std::abs(coeff));
    if (max_coeff == 0.0) throw NoRootError("zero polynomial");
    PolynomialTerms scaled = terms;
    for (auto& [power, coeff] : scaled) coeff /= max_coeff;

    constexpr double kStep = 1e-3;
    double prev_z = 0.0;
    double prev_v = evaluate_polynomial(scaled, 0.0);
    for (int k = 1; k <= 1000; ++k) {
        const double z = static_cast<double>(k) * kStep;
        const double v = evaluate_polynomial(scaled, z);
        if (v == 0.0) return z;
        if ((prev_v < 0.0) != (v < 0.0)) {
            double lo = prev_z, hi = z;
            double flo = prev_v;
            while (hi - lo > 1e-13) {
                const double mid = 0.5 * (lo + hi);
                const double fm = evaluate_polynomial(scaled, mid);
                if (fm == 0.0) return mid;
                if ((flo < 0.0) != (fm < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            const double root = 0.5 * (lo + hi);
            if (std::abs(evaluate_polynomial(scaled, root)) >= 1e-9)
                throw NoRootError("root residual check failed");
            return root;
        }
        prev_z = z;
        prev_v = v;
    }
    throw NoRootError("no sign change on (0,1)");
}

namespace {

void add_term(std::map<int, double>& terms, int power, double coeff) {
    terms[power] += coeff;
}

PolynomialTerms to_terms(const std::map<int, double>& m) {
    PolynomialTerms out;
    for (const auto& [p, c] : m) out.emplace_back(p, c);
    return out;
}

}  // namespace

PolynomialTerms rna_count_polynomial(int theta) {
    if (theta < 1) throw DomainError("theta must be >= 1");
    std::map<int, double> t;
    add_term(t, 0, 1.0);
    add_term(t, 1, -4.0);
    add_term(t, 2, 4.0);
    add_term(t, theta + 2, -2.0);
    add_term(t, theta + 3, 4.0);
    add_term(t, theta + 4, -4.0);
    add_term(t, 2 * theta + 4, 1.0);
    return to_terms(t);
}

PolynomialTerms rna_weighted_polynomial(int theta, double pair_weight) {
    if (theta < 1) throw DomainError("theta must be >= 1");
    if (!(pair_weight > 0.0)) throw DomainError("pair weight must be positive");
    const double q = pair_weight;
    std::map<int, double> t;
    add_term(t, 0, 1.0);
    add_term(t, 1, -4.0);
    add_term(t, 2, 6.0 - 2.0 * q);
    add_term(t, 3, 4.0 * (q - 1.0));
    add_term(t, 4, (1.0 - q) * (1.0 - q));
    add_term(t, theta + 2, -2.0 * q);
    add_term(t, theta + 3, 4.0 * q);
    add_term(t, theta + 4, -2.0 * q * (1.0 + q));
    add_term(t, 2 * theta + 4, q * q);
    return to_terms(t);
}

ScaleExponents m_scale_exponents(const LanguageModel& model) {
    const auto& w = model.assignment.weights;
    switch (model.kind) {
        case Language::SigmaStar: {
            const double k = static_cast<double>(w.size());
            if (k < 2.0)
                throw UnsupportedConfigurationError("sigma-star exponents need >= 2 letters");
            double total = 0.0;
            for (double x : w) total += x;
            const double p = std::log(total) / std::log(k);
            if (model.assignment.unit_count() == 1) return ScaleExponents{p, 0.0, 1.0};
            return ScaleExponents{p, 1.0, 0.0};
        }
        case Language::Motzkin: {
            const double q = w[0] * w[1];
            const double wb = w[2];
            const double root_q = std::sqrt(q);
            if (wb * wb > q) {
                const double p = (std::log(wb + 2.0 * root_q) - std::log(root_q)) / std::log(3.0);
                return ScaleExponents{p, (3.0 * p - 1.0) / 2.0, 0.0};
            }
            if (wb * wb < q) {
                const double p = (std::log(wb + 2.0 * root_q) - std::log(wb)) / std::log(3.0);
                return ScaleExponents{p, 3.0 * (p - 1.0) / 2.0, 1.0};
            }
            throw UnsupportedConfigurationError(
                "motzkin boundary pi_b^2 = pi_a*pi_abar has no stated exponent");
        }
        case Language::Rna: {
            if (w[2] != 1.0)
                throw UnsupportedConfigurationError("rna exponents need pi_b = 1");
            const double q = w[0] * w[1];
            const double rho = smallest_positive_root(rna_weighted_polynomial(model.theta, q));
            const double eta = smallest_positive_root(rna_count_polynomial(model.theta));
            const double p = std::log(rho) / std::log(eta);
            return ScaleExponents{p, 1.5 * p, 1.0};
        }
        case Language::NonConnected: {
            if (w[0] == 1.0 || (w[2] == 1.0 && w[0] < w[1]))
                return ScaleExponents{2.0, 2.5, 0.0};
            const double qhat = std::log2(w[0] / w[1]);
            return ScaleExponents{2.0 + qhat, 2.0 + qhat / 2.0, 1.0};
        }
    }
    throw DomainError("unknown language");
}

PackDiagnostics pack_diagnostics(const ParameterPack& pack, std::int64_t probe) {
    PackDiagnostics d;
    const std::int64_t stop = std::min(probe, pack.index_limit);
    const TStarResult ts = t_star(pack.f1, pack.log_nu, std::max<std::int64_t>(probe, 1000),
                                  pack.index_limit);
    d.head_nu_over_f = 1.0 / std::max(ts.value, std::numeric_limits<double>::min());
    double tail_min = std::numeric_limits<double>::infinity();
    const std::int64_t tail_start = stop - std::max<std::int64_t>(1, stop / 10);
    for (std::int64_t i = 1; i <= stop; ++i) {
        d.sum_inv_H += std::exp(-pack.log_H(i));
        if (i >= tail_start) {
            const double f = pack.f1(i);
            const double nf = (f <= 0.0) ? std::numeric_limits<double>::infinity()
                                         : std::exp(pack.log_nu(i) - std::log(f));
            tail_min = std::min(tail_min, nf);
        }
    }
    d.tail_min_nu_over_f = tail_min;
    d.nu_over_f_diverges =
        pack.index_limit <= stop || tail_min > 10.0 * d.head_nu_over_f;
    return d;
}

}  // namespace wwc
