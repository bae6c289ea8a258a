#include "gvcrand/measures.hpp"

#include <sstream>
#include <stdexcept>

namespace gvcrand {

const char* measure_name(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::U1: return "U1";
        case MeasureKind::D1: return "D1";
        case MeasureKind::U2: return "U2";
        case MeasureKind::D2: return "D2";
        case MeasureKind::UTilde: return "U_tilde";
        case MeasureKind::DTilde: return "D_tilde";
    }
    return "?";
}

namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kMeasureFloor = 1.0 - 1e-9;

void check_entries(const Eigen::MatrixXd& m, const char* who) {
    if (m.rows() != m.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
    if (!(m.array() >= 0.0).all())
        throw std::invalid_argument(std::string(who) + ": negative or non-finite entry");
}

// Row with the largest sum; reported when a solve fails, since a row sum at
// or above 1 is the typical culprit.
std::pair<Eigen::Index, double> worst_row(const Eigen::MatrixXd& m) {
    Eigen::Index row = 0;
    const double sum = m.rowwise().sum().maxCoeff(&row);
    return {row, sum};
}

MeasureVector solve_measure(const Eigen::MatrixXd& m, MeasureKind kind, const char* who) {
    check_entries(m, who);
    const auto n = m.rows();
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - m;
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    Eigen::VectorXd x = lu.solve(ones);
    double residual = (system * x - ones).lpNorm<Eigen::Infinity>();
    if (!(residual <= kResidualTol)) {
        // one step of iterative refinement before giving up
        x += lu.solve(ones - system * x);
        residual = (system * x - ones).lpNorm<Eigen::Infinity>();
    }

    const bool valid = x.allFinite() && residual <= kResidualTol && (x.array() >= kMeasureFloor).all();
    if (!valid) {
        const auto [row, sum] = worst_row(m);
        std::ostringstream msg;
        msg << who << ": singular or ill-conditioned system (worst row " << row
            << " has sum " << sum << ", residual " << residual << ")";
        throw std::runtime_error(msg.str());
    }
    return {std::move(x), kind};
}

MeasureVector iterate_measure(const Eigen::MatrixXd& m, MeasureKind kind,
                              const FixedPointOptions& opts, const char* who) {
    const auto n = m.rows();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd x = ones;
    Eigen::VectorXd next(n);
    for (long it = 0; it < opts.max_iterations; ++it) {
        next.noalias() = ones + m * x;
        const double change = (next - x).lpNorm<Eigen::Infinity>();
        x.swap(next);
        if (change < opts.tol) return {std::move(x), kind};
    }
    std::ostringstream msg;
    msg << who << ": no convergence after " << opts.max_iterations
        << " iterations (spectral radius >= 1?)";
    throw std::runtime_error(msg.str());
}

} // namespace

MeasureVector upstreamness_true(const Eigen::MatrixXd& a_u) {
    return solve_measure(a_u, MeasureKind::U1, "upstreamness_true");
}

MeasureVector downstreamness_true(const Eigen::MatrixXd& a_d) {
    return solve_measure(a_d, MeasureKind::D1, "downstreamness_true");
}

MeasureVector upstreamness_fally(const IoTable& table, FixedPointOptions opts) {
    const auto pair = build_pair(table);
    return iterate_measure(pair.a_u, MeasureKind::U2, opts, "upstreamness_fally");
}

MeasureVector downstreamness_fally(const IoTable& table, FixedPointOptions opts) {
    const auto pair = build_pair(table);
    return iterate_measure(pair.a_d, MeasureKind::D2, opts, "downstreamness_fally");
}

std::pair<MeasureVector, MeasureVector> rank1_estimators(const SubstochasticPair& pair) {
    const Eigen::VectorXd r = pair.a_u.rowwise().sum();
    const Eigen::VectorXd rp = pair.a_d.rowwise().sum();
    const double r_mean = r.mean();
    const double rp_mean = rp.mean();
    if (!(r_mean < 1.0) || !(rp_mean < 1.0)) {
        std::ostringstream msg;
        msg << "rank1_estimators: mean row sum >= 1 (A_U " << r_mean << ", A_D " << rp_mean << ")";
        throw std::runtime_error(msg.str());
    }
    Eigen::VectorXd u_vals = (1.0 + r.array() / (1.0 - r_mean)).matrix();
    Eigen::VectorXd d_vals = (1.0 + rp.array() / (1.0 - rp_mean)).matrix();
    return {MeasureVector{std::move(u_vals), MeasureKind::UTilde},
            MeasureVector{std::move(d_vals), MeasureKind::DTilde}};
}

} // namespace gvcrand
