#include "wordcollector/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace wwc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Above this, 1 - exp(-x) is 1 to double precision and the class term is
// taken first-order as M * exp(-x).
constexpr double kFirstOrderCut = 36.0;

// A total loss beyond this makes the integrand 1 to well below tolerance.
constexpr double kLossSaturation = 46.0;

// Per-class loss terms of the survival product, evaluated in log domain:
// loss(tau) = sum_i exp(log_mult_i + ln g(x_i)), x_i = exp(scaled_lw_i) * tau,
// g(x) = -ln(1 - exp(-x)). Survival = exp(-loss).
struct LossKernel {
    std::vector<double> scaled_lw;  // ln(W_i) + log_scale
    std::vector<double> log_mult;

    LossKernel(const ClassSpectrum& spectrum, double log_scale) {
        scaled_lw.reserve(spectrum.classes.size());
        log_mult.reserve(spectrum.classes.size());
        for (const WeightClass& c : spectrum.classes) {
            scaled_lw.push_back(c.log_weight + log_scale);
            log_mult.push_back(log_of(c.multiplicity));
        }
    }

    double loss(double tau) const {
        if (tau <= 0.0) return kInf;
        const double log_tau = std::log(tau);
        double total = 0.0;
        for (std::size_t i = 0; i < scaled_lw.size(); ++i) {
            const double x = std::exp(scaled_lw[i] + log_tau);
            double term;
            if (x < kFirstOrderCut) {
                const double g = -std::log(-std::expm1(-x));  // +inf as x -> 0
                term = std::exp(log_mult[i] + std::log(g));
            } else {
                term = std::exp(log_mult[i] - x);
            }
            total += term;
            if (total > kLossSaturation) return kInf;
        }
        return total;
    }

    // 1 - survival; decreasing from 1 to 0.
    double integrand(double tau) const { return -std::expm1(-loss(tau)); }
};

// 15-point Kronrod rule with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double integral = 0.0;
    double error = 0.0;
    bool evaluated = false;
};

void evaluate_panel(const LossKernel& kernel, Panel& p) {
    const double c = 0.5 * (p.a + p.b);
    const double h = 0.5 * (p.b - p.a);
    const double fc = kernel.integrand(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double f1 = kernel.integrand(c - h * kXgk[j]);
        const double f2 = kernel.integrand(c + h * kXgk[j]);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    p.integral = resk * h;
    p.error = std::abs(resk - resg) * h;
    p.evaluated = true;
}

// Locate the half-height point of the decreasing integrand by bisection.
double find_knee(const LossKernel& kernel, double upper) {
    double lo = 0.0, hi = upper;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * upper; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (kernel.integrand(mid) > 0.5) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double log_survival(const ClassSpectrum& spectrum, double t) {
    if (!(t > 0.0)) throw DomainError("log_survival needs t > 0");
    const LossKernel kernel(spectrum, -spectrum.log_mu);
    const double loss = kernel.loss(t);
    return loss == kInf ? -kInf : -loss;
}

ExactResult waiting_time_exact_detailed(const ClassSpectrum& spectrum,
                                        const QuadratureSettings& settings, Execution exec) {
    if (spectrum.classes.empty()) throw EmptyLanguageError("empty spectrum");

    // Substituted time axis tau = t * p_min: the integrand is bounded by
    // m * exp(-tau), so truncating at T = ln(m) - ln(eps) caps it at eps.
    const double lw_min = spectrum.classes.front().log_weight;
    const double log_scale_back = spectrum.log_mu - lw_min;  // 1/p_min
    const LossKernel kernel(spectrum, -lw_min);
    const double T = spectrum.log_m - std::log(settings.tail_epsilon);

    const double knee = find_knee(kernel, T);

    // The integrand is a smoothed step: dense panels through the knee,
    // geometric panels across the tail.
    std::vector<Panel> panels;
    const double dense_end = std::min(4.0 * std::max(knee, T * 1e-14), T);
    constexpr int kDensePanels = 16;
    for (int i = 0; i < kDensePanels; ++i) {
        const double a = dense_end * i / kDensePanels;
        const double b = dense_end * (i + 1) / kDensePanels;
        panels.push_back(Panel{a, b});
    }
    for (double a = dense_end; a < T;) {
        const double b = std::min(2.0 * a, T);
        panels.push_back(Panel{a, b});
        a = b;
    }

    long evaluations = 0;
    double integral = 0.0, error = 0.0;
    while (true) {
        std::vector<std::size_t> pending;
        for (std::size_t i = 0; i < panels.size(); ++i)
            if (!panels[i].evaluated) pending.push_back(i);
        const bool parallel = exec == Execution::Parallel && pending.size() > 1;
#pragma omp parallel for schedule(dynamic) if (parallel)
        for (long long k = 0; k < static_cast<long long>(pending.size()); ++k)
            evaluate_panel(kernel, panels[pending[k]]);
        evaluations += static_cast<long>(pending.size()) * 15;

        integral = 0.0;
        error = 0.0;
        for (const Panel& p : panels) {
            integral += p.integral;
            error += p.error;
        }
        const double target = std::max(settings.abs_tol * T, settings.rel_tol * integral);
        if (error <= target) break;

        const double per_panel = target / (2.0 * static_cast<double>(panels.size()));
        std::vector<Panel> next;
        next.reserve(panels.size() + 8);
        bool split_any = false;
        double worst = 0.0;
        for (const Panel& p : panels) worst = std::max(worst, p.error);
        for (const Panel& p : panels) {
            const bool split = p.error > per_panel || (!split_any && p.error == worst);
            if (split && p.b - p.a > 1e-15 * T) {
                const double mid = 0.5 * (p.a + p.b);
                next.push_back(Panel{p.a, mid});
                next.push_back(Panel{mid, p.b});
                split_any = true;
            } else {
                next.push_back(p);
            }
        }
        if (!split_any || static_cast<int>(next.size()) > settings.max_subdivisions) {
            const double partial = std::exp(log_scale_back + std::log(integral));
            throw ConvergenceError("quadrature subdivision budget exhausted", partial,
                                   std::exp(log_scale_back + std::log(error)));
        }
        panels = std::move(next);
    }

    ExactResult result;
    result.log_value = log_scale_back + std::log(integral);
    result.value = std::exp(result.log_value);
    result.error_bound = std::exp(log_scale_back + std::log(error));
    result.tail_point = T;
    result.tail_value = kernel.integrand(T);
    result.panels = static_cast<int>(panels.size());
    result.evaluations = evaluations;
    return result;
}

double waiting_time_exact(const ClassSpectrum& spectrum, const QuadratureSettings& settings,
                          Execution exec) {
    return waiting_time_exact_detailed(spectrum, settings, exec).value;
}

double waiting_time_inclusion_exclusion(const ClassSpectrum& spectrum) {
    if (spectrum.m > 20) throw OracleCapError("inclusion-exclusion capped at m <= 20");
    std::vector<double> p;
    for (const WeightClass& c : spectrum.classes) {
        const double pi = std::exp(c.log_weight - spectrum.log_mu);
        const unsigned long mult = mpz_get_ui(c.multiplicity.get_mpz_t());
        for (unsigned long j = 0; j < mult; ++j) p.push_back(pi);
    }
    const std::size_t m = p.size();
    std::vector<double> subset_sum(std::size_t(1) << m, 0.0);
    double expectation = 0.0;
    for (std::size_t mask = 1; mask < subset_sum.size(); ++mask) {
        const int low = std::countr_zero(mask);
        subset_sum[mask] = subset_sum[mask & (mask - 1)] + p[static_cast<std::size_t>(low)];
        const int bits = std::popcount(mask);
        expectation += (bits % 2 == 1 ? 1.0 : -1.0) / subset_sum[mask];
    }
    return expectation;
}

double psi_value(const ClassSpectrum& spectrum, const ParameterPack& pack, double t) {
    if (t < 0.0) throw DomainError("psi needs t >= 0");
    if (t == 0.0) return 1.0;
    const LossKernel kernel(spectrum, -pack.log_omega + std::log(pack.sum_g));
    const double loss = kernel.loss(t);
    return loss == kInf ? 1.0 : -std::expm1(-loss);
}

std::vector<std::pair<double, double>> psi_curve(const ClassSpectrum& spectrum,
                                                 const ParameterPack& pack,
                                                 const std::vector<double>& t_grid,
                                                 Execution exec) {
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i - 1] <= t_grid[i])) throw DomainError("psi grid must be sorted ascending");
    std::vector<std::pair<double, double>> out(t_grid.size());
    const bool parallel = exec == Execution::Parallel && t_grid.size() > 1;
#pragma omp parallel for schedule(static) if (parallel)
    for (long long i = 0; i < static_cast<long long>(t_grid.size()); ++i)
        out[static_cast<std::size_t>(i)] = {t_grid[static_cast<std::size_t>(i)],
                                            psi_value(spectrum, pack, t_grid[static_cast<std::size_t>(i)])};
    return out;
}

}  // namespace wwc
