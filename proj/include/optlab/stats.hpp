#pragma once

#include <cstdint>

namespace optlab::stats {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// I_x(a, b), the regularized incomplete beta function. a, b > 0, x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

/// Inverse of I_x(a, b) in x, by bisection. p in [0, 1].
double beta_quantile(double a, double b, double p);

/// Exact (Clopper–Pearson) two-sided binomial confidence interval for the
/// success probability after `successes` out of `trials`. Default 95%.
Interval clopper_pearson(uint64_t successes, uint64_t trials, double confidence = 0.95);

} // namespace optlab::stats
