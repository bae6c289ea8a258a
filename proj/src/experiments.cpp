#include "gvcrand/experiments.hpp"

#include "gvcrand/analytics.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gvcrand {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct InstanceOutcome {
    InstanceRecord record{kNaN, kNaN, kNaN, kNaN, 0};
    long rejections = 0;
    bool excluded = false;
};

InstanceOutcome compute_instance(const EnsembleSpec& spec, std::uint64_t index,
                                 bool skip_failures) {
    const bool want_true = spec.measures_requested.contains(MeasureKind::U1) ||
                           spec.measures_requested.contains(MeasureKind::D1);
    const bool want_rank1 = spec.measures_requested.contains(MeasureKind::UTilde) ||
                            spec.measures_requested.contains(MeasureKind::DTilde);

    InstanceOutcome out;
    for (int attempt = 0;; ++attempt) {
        if (attempt > spec.max_resample_attempts) {
            std::ostringstream msg;
            msg << "run_ensemble: instance " << index << " exceeded "
                << spec.max_resample_attempts << " resample attempts under reject policy";
            throw std::runtime_error(msg.str());
        }
        const IoTable table =
            sample_table_instance(spec.params, index, static_cast<std::uint64_t>(attempt));
        const SubstochasticPair pair = build_pair(table);
        if (spec.policy == ViolationPolicy::Reject && pair.d_rowsum_violations > 0) {
            ++out.rejections;
            continue;
        }
        out.record.violations = pair.d_rowsum_violations;

        try {
            if (want_true) {
                out.record.u1 = upstreamness_true(pair.a_u).values(spec.sector_index);
                out.record.d1 = downstreamness_true(pair.a_d).values(spec.sector_index);
            }
            if (want_rank1) {
                const auto [u_tilde, d_tilde] = rank1_estimators(pair);
                out.record.u_tilde = u_tilde.values(spec.sector_index);
                out.record.d_tilde = d_tilde.values(spec.sector_index);
            }
        } catch (const std::exception& e) {
            if (skip_failures) {
                out.excluded = true;
                out.record = {kNaN, kNaN, kNaN, kNaN, pair.d_rowsum_violations};
                return out;
            }
            std::ostringstream msg;
            msg << "run_ensemble: instance " << index << ": " << e.what();
            throw std::runtime_error(msg.str());
        }
        return out;
    }
}

} // namespace

void EnsembleSpec::validate() const {
    params.validate();
    if (instances < 2) throw std::invalid_argument("EnsembleSpec: instances must be >= 2");
    if (sector_index < 0 || sector_index >= params.n_sectors)
        throw std::invalid_argument("EnsembleSpec: sector_index out of range");
    if (max_resample_attempts < 0)
        throw std::invalid_argument("EnsembleSpec: max_resample_attempts must be >= 0");
    for (MeasureKind kind : measures_requested) {
        if (kind == MeasureKind::U2 || kind == MeasureKind::D2)
            throw std::invalid_argument(
                "EnsembleSpec: U2/D2 duplicate U1/D1 on records; request those instead");
    }
}

EnsembleResult run_ensemble(const EnsembleSpec& spec, bool skip_failures) {
    spec.validate();
    const int workers = resolve_workers(spec.workers);

    EnsembleResult result;
    result.records.resize(static_cast<std::size_t>(spec.instances));
    std::atomic<long> rejected{0};
    std::atomic<long> excluded{0};
    std::atomic<int> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto work = [&] {
        for (;;) {
            const int index = cursor.fetch_add(1);
            if (index >= spec.instances) return;
            try {
                InstanceOutcome out =
                    compute_instance(spec, static_cast<std::uint64_t>(index), skip_failures);
                result.records[static_cast<std::size_t>(index)] = out.record;
                rejected += out.rejections;
                if (out.excluded) ++excluded;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    result.rejected_instances = rejected.load();
    result.excluded_instances = excluded.load();
    return result;
}

namespace {

double record_value(const InstanceRecord& rec, MeasureKind kind) {
    switch (kind) {
        case MeasureKind::U1: return rec.u1;
        case MeasureKind::D1: return rec.d1;
        case MeasureKind::UTilde: return rec.u_tilde;
        case MeasureKind::DTilde: return rec.d_tilde;
        default:
            throw std::invalid_argument("scatter: only U1/D1/U_tilde/D_tilde live on records");
    }
}

} // namespace

ScatterResult scatter_from_records(std::span<const InstanceRecord> records,
                                   MeasureKind x_kind, MeasureKind y_kind) {
    ScatterResult scatter;
    std::vector<double> xs, ys;
    xs.reserve(records.size());
    ys.reserve(records.size());
    for (const auto& rec : records) {
        const double x = record_value(rec, x_kind);
        const double y = record_value(rec, y_kind);
        if (std::isnan(x) || std::isnan(y)) continue;  // excluded instances
        xs.push_back(x);
        ys.push_back(y);
        scatter.points.emplace_back(x, y);
    }
    const OlsFit fit = ols_fit(xs, ys);
    scatter.ols_slope = fit.slope;
    scatter.ols_intercept = fit.intercept;
    scatter.pearson_r = pearson_r(xs, ys);
    scatter.sample_covariance = sample_covariance(xs, ys);
    return scatter;
}

ScatterResult scatter_uv(const EnsembleSpec& spec, MeasureKind x_kind, MeasureKind y_kind) {
    const EnsembleResult result = run_ensemble(spec);
    return scatter_from_records(result.records, x_kind, y_kind);
}

std::vector<CovarianceRow> covariance_table(
    std::span<const std::tuple<double, double, int>> rows, int instances, int sector_index,
    std::uint64_t seed, int workers) {
    if (instances < 1000)
        throw std::invalid_argument("covariance_table: needs at least 1000 instances");
    std::vector<CovarianceRow> table;
    table.reserve(rows.size());
    for (const auto& [mu, mu_f, n] : rows) {
        EnsembleSpec spec;
        spec.params.n_sectors = n;
        spec.params.mu = mu;
        spec.params.mu_f = mu_f;
        spec.params.seed = seed;
        spec.instances = instances;
        spec.sector_index = sector_index;
        spec.measures_requested = {MeasureKind::U1, MeasureKind::D1};
        spec.workers = workers;

        const EnsembleResult result = run_ensemble(spec);
        std::vector<double> u1, d1;
        u1.reserve(result.records.size());
        d1.reserve(result.records.size());
        for (const auto& rec : result.records) {
            u1.push_back(rec.u1);
            d1.push_back(rec.d1);
        }
        CovarianceRow row;
        row.mu = mu;
        row.mu_f = mu_f;
        row.n = n;
        row.sample_cov = sample_covariance(u1, d1);
        row.bootstrap_se = bootstrap_se_covariance(u1, d1, 200, seed);
        row.analytic = covariance_exact(n, mu, mu_f);
        table.push_back(row);
    }
    return table;
}

std::vector<SparsityPoint> sparsity_sweep(const EnsembleSpec& base,
                                          std::span<const double> sparsities) {
    std::vector<SparsityPoint> sweep;
    sweep.reserve(sparsities.size());
    for (double sparsity : sparsities) {
        EnsembleSpec spec = base;
        spec.params.sparsity = sparsity;
        const EnsembleResult result = run_ensemble(spec, /*skip_failures=*/true);
        SparsityPoint point;
        point.sparsity = sparsity;
        point.scatter = scatter_from_records(result.records, MeasureKind::U1, MeasureKind::D1);
        point.excluded = result.excluded_instances;
        sweep.push_back(point);
    }
    return sweep;
}

} // namespace gvcrand
