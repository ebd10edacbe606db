#pragma once

#include <functional>

namespace hyplatt {

// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b] to the given
// absolute tolerance.  Bisects intervals whose Kronrod-Gauss discrepancy
// exceeds their share of the budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth = 60);

// Fixed-order composite Simpson rule; independent oracle path for tests.
double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                         int intervals);

} // namespace hyplatt
