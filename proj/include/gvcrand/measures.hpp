#pragma once

#include <utility>

#include <Eigen/Dense>

#include "gvcrand/model.hpp"

namespace gvcrand {

enum class MeasureKind { U1, D1, U2, D2, UTilde, DTilde };

const char* measure_name(MeasureKind kind);

// Per-sector chain-position values; >= 1 on non-negative substochastic input.
struct MeasureVector {
    Eigen::VectorXd values;
    MeasureKind kind;
};

struct FixedPointOptions {
    double tol = 1e-12;          // max-norm change between iterates
    long max_iterations = 1000000;
};

// U1 = (I - A_U)^{-1} 1 via an LU solve (the inverse is never formed).
// Throws std::runtime_error, naming the worst row, when the system is
// singular/ill-conditioned or the solution is not a valid measure
// (residual > 1e-10 or a component below 1).
MeasureVector upstreamness_true(const Eigen::MatrixXd& a_u);

// D1 = (I - A_D)^{-1} 1, same contract as upstreamness_true.
MeasureVector downstreamness_true(const Eigen::MatrixXd& a_d);

// Fixed-point iterates x <- 1 + A_U x from the all-ones vector; equal to U1
// up to solver tolerance. Throws on non-convergence within the cap.
MeasureVector upstreamness_fally(const IoTable& table, FixedPointOptions opts = {});

// x <- 1 + A_D x, mirror of upstreamness_fally.
MeasureVector downstreamness_fally(const IoTable& table, FixedPointOptions opts = {});

// Rank-1 estimators: U~_i = 1 + r_i / (1 - mean(r)) with r the row sums of
// A_U, and the same for D~ with A_D. Throws if a mean row sum reaches 1.
std::pair<MeasureVector, MeasureVector> rank1_estimators(const SubstochasticPair& pair);

} // namespace gvcrand
