#pragma once

#include <cstdint>
#include <variant>

#include <Eigen/Dense>

#include "gvcrand/rng.hpp"

namespace gvcrand {

// Disorder families for the entries of A and the final demands F.
struct Exponential {};

// Entries log-normal with log-mean mu_prime and log-sd sigma; final demands
// log-normal with log-mean demand_mu_prime and unit log-variance.
struct LogNormal {
    double mu_prime = 1.0;
    double sigma = 1.0;
    double demand_mu_prime = 6.67;
};

// Uniform on [0, 2/mu] so the mean matches 1/mu (and [0, 2/mu_f] for demand).
struct Uniform {};

using Disorder = std::variant<Exponential, LogNormal, Uniform>;

struct ModelParams {
    int n_sectors = 1;
    double mu = 1.0;    // entry rate, mean entry 1/mu
    double mu_f = 0.1;  // final-demand rate, mean 1/mu_f
    Disorder disorder = Exponential{};
    double sparsity = 0.0;  // each entry of A independently zeroed with this probability
    std::uint64_t seed = 0;

    // throws std::invalid_argument on bad fields
    void validate() const;
};

// One sampled (or ingested) economy. y and v are derived from (a, f) through
// the accounting identities y_i = sum_j a_ij + f_i = sum_j a_ji + v_i.
struct IoTable {
    Eigen::MatrixXd a;  // a(i,j) = intermediate sales of sector i to sector j
    Eigen::VectorXd f;  // final demand
    Eigen::VectorXd y;  // gross output
    Eigen::VectorXd v;  // value added; can be negative in the random model

    int size() const { return static_cast<int>(f.size()); }

    // Computes y and v and validates: a >= 0, f >= 0, y > 0.
    // Throws std::invalid_argument naming the offending cell or row.
    static IoTable from_flows(Eigen::MatrixXd a, Eigen::VectorXd f);
};

struct SubstochasticPair {
    Eigen::MatrixXd a_u;  // a_ij / y_i
    Eigen::MatrixXd a_d;  // a_ji / y_i
    int d_rowsum_violations = 0;  // rows of a_d with sum > 1

    int size() const { return static_cast<int>(a_u.rows()); }
};

// What to do with instances whose A_D has a row sum above 1.
enum class ViolationPolicy { Flag, Reject };

// One entry of A under the configured disorder family, sparsity mask included
// (mask uniform drawn first, value only when the entry survives).
double sample_flow_entry(const ModelParams& params, RandomStream& rng);

// One final-demand value; never masked.
double sample_demand_entry(const ModelParams& params, RandomStream& rng);

// Draw one IoTable from the model. The stream fixes the instance: identical
// (seed, hi, lo) gives a bit-identical table.
IoTable sample_table(const ModelParams& params, RandomStream& rng);

// Convenience: table for ensemble instance `index` (resample `attempt`).
IoTable sample_table_instance(const ModelParams& params, std::uint64_t index,
                              std::uint64_t attempt = 0);

// A_U and A_D from a valid table. Throws if any y_i = 0.
SubstochasticPair build_pair(const IoTable& table);

} // namespace gvcrand
