#include "gvcrand/model.hpp"

#include <sstream>
#include <stdexcept>

namespace gvcrand {

void ModelParams::validate() const {
    if (n_sectors < 1) throw std::invalid_argument("ModelParams: n_sectors must be >= 1");
    if (!(mu > 0.0)) throw std::invalid_argument("ModelParams: mu must be positive");
    if (!(mu_f > 0.0)) throw std::invalid_argument("ModelParams: mu_f must be positive");
    if (!(sparsity >= 0.0 && sparsity <= 1.0))
        throw std::invalid_argument("ModelParams: sparsity must lie in [0,1]");
    if (const auto* ln = std::get_if<LogNormal>(&disorder)) {
        if (!(ln->sigma > 0.0))
            throw std::invalid_argument("ModelParams: log-normal sigma must be positive");
    }
}

IoTable IoTable::from_flows(Eigen::MatrixXd a, Eigen::VectorXd f) {
    const auto n = f.size();
    if (a.rows() != n || a.cols() != n)
        throw std::invalid_argument("IoTable: flow matrix shape does not match demand vector");
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!(a(i, j) >= 0.0)) {
                std::ostringstream msg;
                msg << "IoTable: negative or non-finite flow a(" << i << "," << j
                    << ") = " << a(i, j);
                throw std::invalid_argument(msg.str());
            }
        }
        if (!(f(i) >= 0.0)) {
            std::ostringstream msg;
            msg << "IoTable: negative or non-finite final demand f(" << i << ") = " << f(i);
            throw std::invalid_argument(msg.str());
        }
    }

    IoTable table;
    table.y = a.rowwise().sum() + f;
    table.v = table.y - a.colwise().sum().transpose();
    table.a = std::move(a);
    table.f = std::move(f);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(table.y(i) > 0.0)) {
            std::ostringstream msg;
            msg << "IoTable: degenerate sector " << i << " with zero gross output";
            throw std::invalid_argument(msg.str());
        }
    }
    return table;
}

double sample_flow_entry(const ModelParams& params, RandomStream& rng) {
    if (params.sparsity > 0.0 && rng.uniform01() < params.sparsity) return 0.0;
    return std::visit(
        [&](const auto& d) -> double {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, Exponential>) {
                return rng.exponential(params.mu);
            } else if constexpr (std::is_same_v<D, LogNormal>) {
                return rng.lognormal(d.mu_prime, d.sigma);
            } else {
                return rng.uniform(0.0, 2.0 / params.mu);
            }
        },
        params.disorder);
}

double sample_demand_entry(const ModelParams& params, RandomStream& rng) {
    return std::visit(
        [&](const auto& d) -> double {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, Exponential>) {
                return rng.exponential(params.mu_f);
            } else if constexpr (std::is_same_v<D, LogNormal>) {
                return rng.lognormal(d.demand_mu_prime, 1.0);
            } else {
                return rng.uniform(0.0, 2.0 / params.mu_f);
            }
        },
        params.disorder);
}

IoTable sample_table(const ModelParams& params, RandomStream& rng) {
    params.validate();
    const int n = params.n_sectors;

    // Fixed draw order: A row-major, then F.
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = sample_flow_entry(params, rng);
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f(i) = sample_demand_entry(params, rng);

    return IoTable::from_flows(std::move(a), std::move(f));
}

IoTable sample_table_instance(const ModelParams& params, std::uint64_t index,
                              std::uint64_t attempt) {
    RandomStream rng(params.seed, attempt, index);
    return sample_table(params, rng);
}

SubstochasticPair build_pair(const IoTable& table) {
    const int n = table.size();
    SubstochasticPair pair;
    pair.a_u.resize(n, n);
    pair.a_d.resize(n, n);
    for (int i = 0; i < n; ++i) {
        if (!(table.y(i) > 0.0)) {
            std::ostringstream msg;
            msg << "build_pair: zero gross output in row " << i;
            throw std::invalid_argument(msg.str());
        }
        const double inv_y = 1.0 / table.y(i);
        for (int j = 0; j < n; ++j) {
            pair.a_u(i, j) = table.a(i, j) * inv_y;
            pair.a_d(i, j) = table.a(j, i) * inv_y;
        }
        // shared diagonal must be exact, not merely equal to rounding
        pair.a_d(i, i) = pair.a_u(i, i);
    }
    pair.d_rowsum_violations =
        static_cast<int>((pair.a_d.rowwise().sum().array() > 1.0).count());
    return pair;
}

} // namespace gvcrand
