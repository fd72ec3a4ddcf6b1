#pragma once

#include <cstdint>

namespace rankci::numerics {

/// Standard normal CDF. Throws std::domain_error for non-finite input.
double norm_cdf(double x);

/// Standard normal density.
double norm_pdf(double x);

/// Inverse of norm_cdf on (0, 1). Throws std::domain_error outside the open
/// unit interval.
double norm_quantile(double p);

/// P(B > trials * threshold_fraction) for B ~ Binomial(trials, success_prob).
struct BinomialTailQuery {
    std::int64_t trials = 0;
    double threshold_fraction = 0.5;
    double success_prob = 0.5;
};

/// Binomial pmf evaluated with Loader's saddle-point expansion, which keeps
/// full relative precision far into the tails.
double binom_pmf(std::int64_t trials, std::int64_t successes, double success_prob);

/// Strict upper tail: sums the pmf over every integer s > trials * q.
/// Throws std::invalid_argument for negative trials, q outside (0, 1) or a
/// success probability outside [0, 1].
double binom_tail_gt(const BinomialTailQuery& query);

}  // namespace rankci::numerics
