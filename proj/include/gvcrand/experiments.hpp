#pragma once

#include <set>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "gvcrand/measures.hpp"
#include "gvcrand/model.hpp"
#include "gvcrand/stats.hpp"

namespace gvcrand {

struct EnsembleSpec {
    ModelParams params;
    int instances = 1000;   // m
    int sector_index = 6;   // 0-based (the paper's i = 7)
    std::set<MeasureKind> measures_requested = {MeasureKind::U1, MeasureKind::D1,
                                                MeasureKind::UTilde, MeasureKind::DTilde};
    ViolationPolicy policy = ViolationPolicy::Flag;
    int max_resample_attempts = 100;
    int workers = 0;  // 0 -> hardware concurrency

    void validate() const;
};

// One row per instance; measures not requested are NaN.
struct InstanceRecord {
    double u1, d1, u_tilde, d_tilde;
    int violations;
};

struct EnsembleResult {
    std::vector<InstanceRecord> records;
    long rejected_instances = 0;     // resamples performed under Reject policy
    long excluded_instances = 0;     // solver failures skipped (sparsity sweeps)
};

struct ScatterResult {
    std::vector<std::pair<double, double>> points;
    double ols_slope = 0.0;
    double ols_intercept = 0.0;
    double pearson_r = 0.0;
    double sample_covariance = 0.0;
};

struct CovarianceRow {
    double mu, mu_f;
    int n;
    double sample_cov;
    double bootstrap_se;
    double analytic;
};

struct SparsityPoint {
    double sparsity;
    ScatterResult scatter;  // U1 vs D1
    long excluded;          // singular instances skipped
};

// m per-instance records, deterministic in (seed, instance) and independent
// of the worker count. Solver failures propagate with the instance index,
// except when `skip_failures` is set (sparsity sweeps), where they are
// counted and excluded.
EnsembleResult run_ensemble(const EnsembleSpec& spec, bool skip_failures = false);

// Scatter of y_kind against x_kind across the ensemble's instances.
ScatterResult scatter_uv(const EnsembleSpec& spec, MeasureKind x_kind, MeasureKind y_kind);

// Same, reusing already-computed records.
ScatterResult scatter_from_records(std::span<const InstanceRecord> records,
                                   MeasureKind x_kind, MeasureKind y_kind);

// Sample Cov(U1_i, D1_i) with bootstrap SE against the analytic C_N, one
// output row per (mu, mu_f, n) input row.
std::vector<CovarianceRow> covariance_table(
    std::span<const std::tuple<double, double, int>> rows, int instances, int sector_index,
    std::uint64_t seed, int workers = 0);

// (U1 vs D1) scatter per sparsity level, base spec otherwise unchanged.
std::vector<SparsityPoint> sparsity_sweep(const EnsembleSpec& base,
                                          std::span<const double> sparsities);

} // namespace gvcrand
