#include "gvcrand/oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gvcrand {

// After s = mu t/(1-t) the J integrand collapses to
//   mu^{1-k} (1-t)^{k-1} / (mu_f (1-t) + mu t)      on t in [0,1],
// smooth up to the endpoint.
QuadratureResult quad_j(int k, double mu, double mu_f, double tol, long max_evaluations) {
    if (k < 1) throw std::invalid_argument("quad_j: k must be >= 1");
    if (!(mu > 0.0) || !(mu_f > 0.0)) throw std::invalid_argument("quad_j: rates must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("quad_j: tol must be positive");

    const double scale = std::pow(mu, 1.0 - k);
    auto integrand = [=](double t) {
        const double omt = 1.0 - t;
        return scale * std::pow(omt, k - 1) / (mu_f * omt + mu * t);
    };
    return integrate_adaptive(integrand, 0.0, 1.0, tol, max_evaluations);
}

// u = s + t reduces the double integral exactly (the line s+t=u has measure
// u); the same map u = mu t/(1-t) then gives
//   mu^{2-k} t (1-t)^{k-2} / (mu_f (1-t) + mu t).
QuadratureResult quad_l(int k, double mu, double mu_f, double tol, long max_evaluations) {
    if (k < 2) throw std::invalid_argument("quad_l: k must be >= 2");
    if (!(mu > 0.0) || !(mu_f > 0.0)) throw std::invalid_argument("quad_l: rates must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("quad_l: tol must be positive");

    const double scale = std::pow(mu, 2.0 - k);
    auto integrand = [=](double t) {
        const double omt = 1.0 - t;
        return scale * t * std::pow(omt, k - 2) / (mu_f * omt + mu * t);
    };
    return integrate_adaptive(integrand, 0.0, 1.0, tol, max_evaluations);
}

Eigen::VectorXd neumann_measure(const Eigen::MatrixXd& m, int terms) {
    if (terms < 1) throw std::invalid_argument("neumann_measure: terms must be >= 1");
    if (m.rows() != m.cols()) throw std::invalid_argument("neumann_measure: matrix not square");
    if (!(m.array() >= 0.0).all())
        throw std::invalid_argument("neumann_measure: negative or non-finite entry");
    Eigen::Index row = 0;
    const double max_row_sum = m.rowwise().sum().maxCoeff(&row);
    if (!(max_row_sum < 1.0)) {
        std::ostringstream msg;
        msg << "neumann_measure: row " << row << " has sum " << max_row_sum << " >= 1";
        throw std::invalid_argument(msg.str());
    }

    Eigen::VectorXd total = Eigen::VectorXd::Ones(m.rows());
    Eigen::VectorXd term = total;
    Eigen::VectorXd next(m.rows());
    for (int j = 0; j < terms; ++j) {
        next.noalias() = m * term;
        term.swap(next);
        total += term;
    }
    return total;
}

MomentSet moments_bruteforce(const ModelParams& params, long samples) {
    params.validate();
    if (samples < 10000)
        throw std::invalid_argument("moments_bruteforce: needs at least 10^4 samples");
    const int n = params.n_sectors;

    double sum[4] = {0, 0, 0, 0};
    double sum_sq[4] = {0, 0, 0, 0};
    for (long s = 0; s < samples; ++s) {
        RandomStream rng(params.seed, kStreamMoments, static_cast<std::uint64_t>(s));

        // row 1 of A, then column 1 below the diagonal, then F_1
        double row_sum = 0.0;
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            const double value = sample_flow_entry(params, rng);
            row_sum += value;
            if (j == 0) diag = value;
        }
        double col_sum = diag;
        for (int j = 1; j < n; ++j) col_sum += sample_flow_entry(params, rng);
        const double f1 = sample_demand_entry(params, rng);

        const double y1 = row_sum + f1;
        const double r = row_sum / y1;
        const double rp = col_sum / y1;
        const double x[4] = {r, rp, r * rp, r * r};
        for (int i = 0; i < 4; ++i) {
            sum[i] += x[i];
            sum_sq[i] += x[i] * x[i];
        }
    }

    MomentSet m;
    m.source = MomentSource::MonteCarlo;
    const double count = static_cast<double>(samples);
    double mean[4];
    for (int i = 0; i < 4; ++i) {
        mean[i] = sum[i] / count;
        const double var =
            samples > 1 ? std::max(0.0, (sum_sq[i] - count * mean[i] * mean[i]) / (count - 1.0))
                        : 0.0;
        m.std_errors[i] = std::sqrt(var / count);
    }
    m.e_r = mean[0];
    m.e_rp = mean[1];
    m.e_rrp = mean[2];
    m.e_r2 = mean[3];
    return m;
}

} // namespace gvcrand
