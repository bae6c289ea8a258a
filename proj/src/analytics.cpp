#include "gvcrand/analytics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gvcrand {

namespace {

constexpr double kSeriesTol = 1e-15;
constexpr double kCrossCheckTol = 1e-9;
constexpr double kRouteTol = 1e-8;
constexpr long kMaxSeriesTerms = 200000000;

// Neumaier-compensated accumulator
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;

    void add(double term) {
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }

    double total() const { return sum + comp; }
};

// sum_{n>=0} phi^n / (n+k) for phi in (0,1)
double lerch_series(int k, double phi) {
    Accumulator acc;
    double p = 1.0;  // phi^n
    for (long n = 0;; ++n) {
        acc.add(p / (static_cast<double>(n) + k));
        p *= phi;
        const double tail_bound = p / ((static_cast<double>(n) + k) * (1.0 - phi));
        if (tail_bound < kSeriesTol * acc.total()) break;
        if (n > kMaxSeriesTerms)
            throw std::runtime_error("hyp2f1_special: series did not converge");
    }
    return acc.total();
}

// Pfaff transform for phi < 0:
//   B(1,k) 2F1(k,1;k+1;phi) = (1/k) (1-phi)^{-1} 2F1(1,1;k+1;phi/(phi-1)),
// whose series has positive terms and ratio < |phi|/(1+|phi|) < 1.
double pfaff_series(int k, double phi) {
    const double w = phi / (phi - 1.0);
    Accumulator acc;
    double term = 1.0;
    for (long n = 0;; ++n) {
        acc.add(term);
        term *= w * (static_cast<double>(n) + 1.0) / (static_cast<double>(k) + 1.0 + n);
        if (term / (1.0 - w) < kSeriesTol * acc.total()) break;
        if (n > kMaxSeriesTerms)
            throw std::runtime_error("hyp2f1_special: transformed series did not converge");
    }
    return acc.total() / (k * (1.0 - phi));
}

} // namespace

Phi Phi::from_rates(double mu, double mu_f) {
    if (!(mu > 0.0) || !(mu_f > 0.0))
        throw std::invalid_argument("Phi: rates must be positive");
    return Phi{1.0 - mu_f / mu};
}

double hyp2f1_special(int k, Phi phi) {
    if (k < 1) throw std::invalid_argument("hyp2f1_special: k must be >= 1");
    const double p = phi.value;
    if (!(p < 1.0)) throw std::domain_error("hyp2f1_special: divergent for phi >= 1");
    if (p == 0.0) return 1.0 / k;

    const double value = p > 0.0 ? lerch_series(k, p) : pfaff_series(k, p);

    // The bracket of the log form equals phi^k * S, so its relative accuracy
    // degrades as phi^k shrinks; the check tolerance tracks that conditioning
    // instead of flagging pure round-off as a disagreement.
    const double pk = std::pow(std::abs(p), k);
    if (std::abs(p) < 1.0 && pk > 1e-8) {
        const double alt = hyp2f1_special_logform(k, phi);
        const double eps_ld = static_cast<double>(std::numeric_limits<long double>::epsilon());
        const double bracket_err =
            eps_ld * (std::abs(std::log1p(-p)) + std::abs(p) / (1.0 - std::abs(p)));
        const double tol = std::max(kCrossCheckTol, 20.0 * bracket_err / (pk * std::abs(value)));
        if (!(std::abs(alt - value) <= tol * std::abs(value))) {
            std::ostringstream msg;
            msg << "hyp2f1_special: series " << value << " and log form " << alt
                << " disagree at k=" << k << ", phi=" << p;
            throw std::runtime_error(msg.str());
        }
    }
    return value;
}

double hyp2f1_special_logform(int k, Phi phi) {
    if (k < 1) throw std::invalid_argument("hyp2f1_special_logform: k must be >= 1");
    const double p = phi.value;
    if (!(p < 1.0) || p == 0.0)
        throw std::domain_error("hyp2f1_special_logform: needs phi < 1, phi != 0");
    // extended precision: the bracket cancels down to phi^k * S
    const long double pl = p;
    long double bracket = -std::log1p(-pl);
    long double compensation = 0.0L;
    long double pm = 1.0L;
    for (int m = 1; m <= k - 1; ++m) {
        pm *= pl;
        const long double term = -pm / m;
        const long double t = bracket + term;
        if (std::abs(bracket) >= std::abs(term)) {
            compensation += (bracket - t) + term;
        } else {
            compensation += (term - t) + bracket;
        }
        bracket = t;
    }
    bracket += compensation;
    long double power = 1.0L;
    for (int m = 0; m < k; ++m) power *= pl;
    return static_cast<double>(bracket / power);
}

double j_integral(int k, double mu, double mu_f) {
    if (k < 1) throw std::invalid_argument("j_integral: k must be >= 1");
    const Phi phi = Phi::from_rates(mu, mu_f);
    const double s = hyp2f1_special(k, phi);
    const double log_j = -static_cast<double>(k) * std::log(mu) + std::log(s);
    const double j = std::exp(log_j);
    if (!std::isfinite(j)) {
        std::ostringstream msg;
        msg << "j_integral: overflow at k=" << k << ", mu=" << mu << ", mu_f=" << mu_f;
        throw std::overflow_error(msg.str());
    }
    return j;
}

namespace {

// mu^{k-1} L(k) = 1/(k-1) - (1-phi) S(k,phi), dimensionless in mu
double l_reduced(int k, Phi phi) {
    return 1.0 / (k - 1.0) - (1.0 - phi.value) * hyp2f1_special(k, phi);
}

} // namespace

double l_integral(int k, double mu, double mu_f) {
    if (k < 2) throw std::invalid_argument("l_integral: k must be >= 2 (divergent otherwise)");
    const Phi phi = Phi::from_rates(mu, mu_f);
    const double t = l_reduced(k, phi);
    const double log_l = (1.0 - k) * std::log(mu) + std::log(t);
    const double l = std::exp(log_l);
    if (!std::isfinite(l) || !(l > 0.0)) {
        std::ostringstream msg;
        msg << "l_integral: invalid value at k=" << k << ", mu=" << mu << ", mu_f=" << mu_f;
        throw std::overflow_error(msg.str());
    }
    return l;
}

MomentSet moments_analytic(int n, double mu, double mu_f) {
    if (n < 1) throw std::invalid_argument("moments_analytic: n must be >= 1");
    const Phi phi = Phi::from_rates(mu, mu_f);
    const double eps = mu_f / mu;  // = 1 - phi
    const double nn = n;

    // Boxed appendix results with every mu^N power cancelled analytically:
    //   E[r]    = mu^N mu_F N J(N+1)                      = eps N S(N+1)
    //   E[r']   = mu^{2N-1} mu_F [J(N+1)/mu^{N-1}
    //                             + (N-1) J(N)/mu^N]      = eps [S(N+1) + (N-1) S(N)]
    //   E[rr']  = mu^{2N-1} mu_F [2L(N+2)/mu^{N-1} + (N-1)L(N+1)/mu^N
    //             + (N-1)L(N+2)/mu^{N-1} + (N-1)^2 L(N+1)/mu^N]
    //           = eps [(N+1) T(N+2) + N(N-1) T(N+1)]
    //   E[r^2]  = mu^N mu_F (N^2+N) L(N+2)                = eps N(N+1) T(N+2)
    // with S(k) = B(1,k) 2F1(k,1;k+1;phi) and T(k) = mu^{k-1} L(k).
    const double s_n1 = hyp2f1_special(n + 1, phi);
    const double s_n = n > 1 ? hyp2f1_special(n, phi) : 0.0;  // weighted by (n-1) = 0 at n=1
    const double t_n2 = l_reduced(n + 2, phi);
    const double t_n1 = l_reduced(n + 1, phi);

    MomentSet m;
    m.e_r = eps * nn * s_n1;
    m.e_rp = eps * (s_n1 + (nn - 1.0) * s_n);
    m.e_rrp = eps * ((nn + 1.0) * t_n2 + nn * (nn - 1.0) * t_n1);
    m.e_r2 = eps * nn * (nn + 1.0) * t_n2;
    m.source = MomentSource::Analytic;
    if (!std::isfinite(m.e_r) || !std::isfinite(m.e_rp) || !std::isfinite(m.e_rrp) ||
        !std::isfinite(m.e_r2)) {
        std::ostringstream msg;
        msg << "moments_analytic: non-finite moment at n=" << n << ", mu=" << mu
            << ", mu_f=" << mu_f;
        throw std::overflow_error(msg.str());
    }
    return m;
}

double covariance_moment_route(int n, double mu, double mu_f) {
    const MomentSet m = moments_analytic(n, mu, mu_f);
    if (!(m.e_r < 1.0) || !(m.e_rp < 1.0)) {
        std::ostringstream msg;
        msg << "covariance: E[r]=" << m.e_r << ", E[r']=" << m.e_rp
            << " outside model validity (must be < 1)";
        throw std::domain_error(msg.str());
    }
    return (m.e_rrp - m.e_r * m.e_rp) / ((1.0 - m.e_r) * (1.0 - m.e_rp));
}

double covariance_theorem_route(int n, double mu, double mu_f) {
    const Phi phi = Phi::from_rates(mu, mu_f);
    const double p = phi.value;
    const double nn = n;

    // bf(k) = B(1,k) 2F1(1,k;k+1;phi), the building block of the printed form
    const double bf_n = hyp2f1_special(n, phi);
    const double bf_n1 = hyp2f1_special(n + 1, phi);
    const double bf_n2 = hyp2f1_special(n + 2, phi);

    const double numerator =
        (p - 1.0) * (nn * (p - 1.0) * bf_n1 * bf_n1 +
                     (nn - 1.0) * nn * (p - 1.0) * bf_n1 * (bf_n + 1.0) +
                     (nn + 1.0) * (p - 1.0) * bf_n2 + nn);
    const double denominator =
        ((nn - 1.0) * (p - 1.0) * bf_n + (p - 1.0) * bf_n1 + 1.0) *
        (nn * (p - 1.0) * bf_n1 + 1.0);
    return -numerator / denominator;
}

double covariance_exact(int n, double mu, double mu_f) {
    const double via_moments = covariance_moment_route(n, mu, mu_f);
    const double via_theorem = covariance_theorem_route(n, mu, mu_f);
    if (!(std::abs(via_moments - via_theorem) <= kRouteTol * std::abs(via_moments))) {
        std::ostringstream msg;
        msg << "covariance_exact: moment route " << via_moments << " and closed form "
            << via_theorem << " disagree at n=" << n << ", mu=" << mu << ", mu_f=" << mu_f;
        throw std::runtime_error(msg.str());
    }
    return via_moments;
}

double slope_exact(int n, double mu, double mu_f) {
    const MomentSet m = moments_analytic(n, mu, mu_f);
    const double cov = covariance_exact(n, mu, mu_f);
    const double variance = m.e_r2 - m.e_r * m.e_r;
    if (!(variance > 0.0)) {
        std::ostringstream msg;
        msg << "slope_exact: zero variance denominator at n=" << n << ", mu=" << mu
            << ", mu_f=" << mu_f;
        throw std::domain_error(msg.str());
    }
    const double one_minus_er = 1.0 - m.e_r;
    return cov * one_minus_er * one_minus_er / variance;
}

std::vector<std::pair<int, double>> covariance_curve(int n_max, double mu, double mu_f) {
    if (n_max < 1) throw std::invalid_argument("covariance_curve: n_max must be >= 1");
    std::vector<std::pair<int, double>> curve;
    curve.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) curve.emplace_back(n, covariance_exact(n, mu, mu_f));
    return curve;
}

} // namespace gvcrand
