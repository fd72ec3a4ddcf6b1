#include "rankci/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rankci::numerics {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;

// Wichura, Algorithm AS 241 (PPND16).
double ppnd16(double p) {
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }

    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value = 0.0;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                    3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                  4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                  2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                  5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
}

// log(n!) - log(sqrt(2 pi n) (n/e)^n)
double stirlerr(double n) {
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    if (n <= 15.0) {
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kLnSqrt2Pi;
    }
    const double nn = n * n;
    if (n > 500.0) return (s0 - s1 / nn) / n;
    if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x / np) + np - x, evaluated without cancellation near x == np.
double bd0(double x, double np) {
    if (std::abs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2.0 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double next = s + ej / (2 * j + 1);
            if (next == s) return next;
            s = next;
        }
        return s;
    }
    return x * std::log(x / np) + np - x;
}

}  // namespace

double norm_cdf(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("norm_cdf: argument must be finite");
    }
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x - kLnSqrt2Pi);
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("norm_quantile: probability must lie in (0, 1), got " +
                                std::to_string(p));
    }
    double x = ppnd16(p);
    // One Halley step against the erfc-based CDF.
    const double density = norm_pdf(x);
    if (density > 0.0) {
        // Phi(x) - p, taken from the tail that keeps relative precision.
        const double err = p < 0.5 ? norm_cdf(x) - p : (1.0 - p) - 0.5 * std::erfc(x * kInvSqrt2);
        const double u = err / density;
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double binom_pmf(std::int64_t trials, std::int64_t successes, double success_prob) {
    if (successes < 0 || successes > trials) return 0.0;
    const double n = static_cast<double>(trials);
    const double x = static_cast<double>(successes);
    const double p = success_prob;
    const double q = 1.0 - p;
    if (p == 0.0) return successes == 0 ? 1.0 : 0.0;
    if (q == 0.0) return successes == trials ? 1.0 : 0.0;
    if (successes == 0) {
        if (trials == 0) return 1.0;
        return std::exp(p < 0.1 ? -bd0(n, n * q) - n * p : n * std::log(q));
    }
    if (successes == trials) {
        return std::exp(q < 0.1 ? -bd0(n, n * p) - n * q : n * std::log(p));
    }
    const double lc = stirlerr(n) - stirlerr(x) - stirlerr(n - x) - bd0(x, n * p) - bd0(n - x, n * q);
    const double lf = 2.0 * kLnSqrt2Pi + std::log(x) + std::log1p(-x / n);
    return std::exp(lc - 0.5 * lf);
}

double binom_tail_gt(const BinomialTailQuery& query) {
    if (query.trials < 0) {
        throw std::invalid_argument("binom_tail_gt: trials must be non-negative");
    }
    if (!(query.threshold_fraction > 0.0 && query.threshold_fraction < 1.0)) {
        throw std::invalid_argument("binom_tail_gt: threshold fraction must lie in (0, 1)");
    }
    if (!(query.success_prob >= 0.0 && query.success_prob <= 1.0)) {
        throw std::invalid_argument("binom_tail_gt: success probability must lie in [0, 1]");
    }
    const auto n = query.trials;
    const auto first = static_cast<std::int64_t>(std::floor(static_cast<double>(n) * query.threshold_fraction)) + 1;
    if (first > n) return 0.0;

    // Sum from the far end so the smallest terms are accumulated first.
    double total = 0.0;
    for (std::int64_t s = n; s >= first; --s) {
        total += binom_pmf(n, s, query.success_prob);
    }
    return total > 1.0 ? 1.0 : total;
}

}  // namespace rankci::numerics
