#pragma once

#include "wordcollector/spectrum.hpp"

namespace wwc {

// Direct summation up to 1e6, asymptotic expansion ln x + gamma + 1/(2x)
// beyond (absolute error below 1e-12 there).
double harmonic_number(double x);

// Sum over coupon ranks of 1/(i * p_i), ranks running through the classes
// in increasing-weight order, evaluated groupwise: one harmonic-number
// difference per class instead of one term per coupon.
double u2(const ClassSpectrum& spectrum);

struct ApproxReport {
    double u2 = 0.0;
    double lower = 0.0;   // u2 / (3e ln ln m)
    double upper = 0.0;   // 2 u2
    double m_float = 0.0;
    bool satisfied = false;
};

// Proven sandwich around the exact waiting time; needs m >= 16 so that
// ln ln m is comfortably positive.
ApproxReport check_bounds(const ClassSpectrum& spectrum, double exact);

}  // namespace wwc
