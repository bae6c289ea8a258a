#include "gvcrand/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gvcrand {

namespace {

void check_paired(std::span<const double> x, std::span<const double> y, const char* who) {
    if (x.size() != y.size()) throw std::invalid_argument(std::string(who) + ": length mismatch");
    if (x.size() < 2) throw std::invalid_argument(std::string(who) + ": needs at least 2 points");
}

} // namespace

double mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean: empty input");
    double sum = 0.0;
    for (double v : x) sum += v;
    return sum / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) throw std::invalid_argument("sample_variance: needs at least 2 points");
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

double sample_covariance(std::span<const double> x, std::span<const double> y) {
    check_paired(x, y, "sample_covariance");
    const double mx = mean(x);
    const double my = mean(y);
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ss += (x[i] - mx) * (y[i] - my);
    return ss / static_cast<double>(x.size() - 1);
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
    const double sx = std::sqrt(sample_variance(x));
    const double sy = std::sqrt(sample_variance(y));
    if (!(sx > 0.0) || !(sy > 0.0))
        throw std::invalid_argument("pearson_r: degenerate variance");
    return sample_covariance(x, y) / (sx * sy);
}

OlsFit ols_fit(std::span<const double> x, std::span<const double> y) {
    check_paired(x, y, "ols_fit");
    const double vx = sample_variance(x);
    if (!(vx > 0.0)) throw std::invalid_argument("ols_fit: degenerate x variance");
    OlsFit fit;
    fit.slope = sample_covariance(x, y) / vx;
    fit.intercept = mean(y) - fit.slope * mean(x);
    return fit;
}

double bootstrap_se_covariance(std::span<const double> x, std::span<const double> y,
                               int resamples, std::uint64_t seed) {
    check_paired(x, y, "bootstrap_se_covariance");
    if (resamples < 2) throw std::invalid_argument("bootstrap_se_covariance: resamples must be >= 2");
    const std::size_t n = x.size();
    std::vector<double> rx(n), ry(n), cov(static_cast<std::size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
        RandomStream rng(seed, kStreamBootstrap, static_cast<std::uint64_t>(b));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pick = static_cast<std::size_t>(rng.next() % n);
            rx[i] = x[pick];
            ry[i] = y[pick];
        }
        cov[static_cast<std::size_t>(b)] = sample_covariance(rx, ry);
    }
    return std::sqrt(sample_variance(cov));
}

} // namespace gvcrand
