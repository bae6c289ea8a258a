#pragma once

#include <array>
#include <utility>
#include <vector>

namespace gvcrand {

// Effective parameter phi = 1 - mu_f/mu. The covariance depends on the rates
// only through this number.
struct Phi {
    double value = 0.0;

    static Phi from_rates(double mu, double mu_f);
};

enum class MomentSource { Analytic, MonteCarlo };

// First and second moments of the row sums r = sum_j (A_U)_{1j} and
// r' = sum_j (A_D)_{1j} under exponential disorder.
struct MomentSet {
    double e_r = 0.0;
    double e_rp = 0.0;
    double e_rrp = 0.0;
    double e_r2 = 0.0;
    MomentSource source = MomentSource::Analytic;
    // standard errors of (e_r, e_rp, e_rrp, e_r2); meaningful for MonteCarlo
    std::array<double, 4> std_errors{};
};

// B(1,k) * 2F1(k,1;k+1;phi) = sum_{n>=0} phi^n / (n+k).
//
// Compensated series for phi in [0,1) (tail bound phi^{n+1}/((n+k)(1-phi)));
// Pfaff-transformed series for phi < 0 where the direct sum would diverge.
// Cross-checked against the closed log form whenever |phi|^k > 1e-8.
double hyp2f1_special(int k, Phi phi);

// phi^{-k} (-ln(1-phi) - sum_{m=1}^{k-1} phi^m/m); algebraically equal to
// hyp2f1_special but numerically unsafe when phi^k is tiny.
double hyp2f1_special_logform(int k, Phi phi);

// J(k) = int_0^inf ds (mu+s)^{-k} (mu_f+s)^{-1} = mu^{-k} B(1,k) 2F1(k,1;k+1;phi)
double j_integral(int k, double mu, double mu_f);

// L(k) = mu^{1-k}/(k-1) - mu_f J(k), k >= 2; strictly positive
double l_integral(int k, double mu, double mu_f);

// Closed-form moments. Every mu^N power is cancelled against J/L analytically
// before evaluation, so nothing overflows for N up to the thousands.
MomentSet moments_analytic(int n, double mu, double mu_f);

// (E[rr'] - E[r]E[r']) / ((1-E[r])(1-E[r'])); throws if E[r] or E[r'] >= 1.
double covariance_moment_route(int n, double mu, double mu_f);

// -N_N(phi)/D_N(phi) exactly as the closed form is written, in terms of
// B(1,.) 2F1 blocks.
double covariance_theorem_route(int n, double mu, double mu_f);

// Evaluates both routes and requires agreement to 1e-8 relative; a mismatch
// is an error, never averaged away.
double covariance_exact(int n, double mu, double mu_f);

// S = C_N (1-E[r])^2 / (E[r^2] - E[r]^2); equals 1 for every valid (n, rates).
double slope_exact(int n, double mu, double mu_f);

// C_N for N = 1..n_max at fixed rates.
std::vector<std::pair<int, double>> covariance_curve(int n_max, double mu, double mu_f);

} // namespace gvcrand
