#pragma once

#include <Eigen/Dense>

#include "gvcrand/analytics.hpp"
#include "gvcrand/model.hpp"
#include "gvcrand/quadrature.hpp"

namespace gvcrand {

// Independent verification engines. Nothing here may call the closed forms
// it is used to check.

// J(k) by adaptive quadrature of the defining integral, mapped to [0,1)
// through s = mu t/(1-t).
QuadratureResult quad_j(int k, double mu, double mu_f, double tol = 1e-12,
                        long max_evaluations = 2000000);

// L(k), k >= 2, with the double integral reduced exactly to
// int_0^inf u (mu_f+u)^{-1} (mu+u)^{-k} du via u = s+t.
QuadratureResult quad_l(int k, double mu, double mu_f, double tol = 1e-12,
                        long max_evaluations = 2000000);

// Partial sums sum_{j=0}^{terms} M^j 1 by repeated mat-vec products;
// monotone non-decreasing in `terms` and convergent to the linear solve.
Eigen::VectorXd neumann_measure(const Eigen::MatrixXd& m, int terms);

// Brute-force Monte Carlo moments of (r, r'). Only row 1 and column 1 of A
// plus F_1 are sampled, so each sample costs O(N).
MomentSet moments_bruteforce(const ModelParams& params, long samples);

} // namespace gvcrand
