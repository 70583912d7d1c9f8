#include "wordcollector/reference.hpp"

#include <cmath>

#include "wordcollector/exact.hpp"

namespace wwc {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double fm, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    const double fa = f(a), fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

double waiting_time_reference(const ClassSpectrum& spectrum, double rel_tol) {
    const double lw_min = spectrum.classes.front().log_weight;
    const double p_min = std::exp(lw_min - spectrum.log_mu);
    const double T = (spectrum.log_m + std::log(1e14)) / p_min;

    auto integrand = [&](double t) {
        if (t <= 0.0) return 1.0;
        const double ls = log_survival(spectrum, t);
        return -std::expm1(ls);
    };

    // Integrate in doubling windows so the recursion depth stays local to
    // each scale of the (very stretched) integrand.
    double total = 0.0;
    double a = 0.0;
    double b = std::min(1.0 / p_min * 1e-3, T);
    while (a < T) {
        total += adaptive_simpson(integrand, a, b, rel_tol * std::max(total, 1.0) / 64.0);
        a = b;
        b = std::min(2.0 * b, T);
    }
    return total;
}

}  // namespace wwc
