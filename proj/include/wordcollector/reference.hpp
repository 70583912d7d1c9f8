#pragma once

#include <functional>

#include "wordcollector/spectrum.hpp"

namespace wwc {

// Plain serial integrators kept as the reference path for the panel-based
// engine. Different rule (Simpson), different refinement (recursive), no
// shared code beyond the survival function itself.

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

// Waiting time on the natural time axis, integrating 1 - survival with
// recursive Simpson. Only suitable while 1/p_min fits a double comfortably.
double waiting_time_reference(const ClassSpectrum& spectrum, double rel_tol = 1e-9);

}  // namespace wwc
