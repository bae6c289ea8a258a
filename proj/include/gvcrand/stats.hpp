#pragma once

#include <span>

#include "gvcrand/rng.hpp"

namespace gvcrand {

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
};

double mean(std::span<const double> x);

// unbiased (n-1) sample variance / covariance
double sample_variance(std::span<const double> x);
double sample_covariance(std::span<const double> x, std::span<const double> y);

double pearson_r(std::span<const double> x, std::span<const double> y);

// ordinary least squares of y on x with free intercept; throws on
// degenerate x variance
OlsFit ols_fit(std::span<const double> x, std::span<const double> y);

// bootstrap standard error of the sample covariance (resamples pairs)
double bootstrap_se_covariance(std::span<const double> x, std::span<const double> y,
                               int resamples, std::uint64_t seed);

} // namespace gvcrand
