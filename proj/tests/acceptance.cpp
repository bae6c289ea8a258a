// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Run with no arguments for all criteria, or pass criterion numbers to run a
// subset (e.g. "acceptance 1 3 7").

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gvcrand/analytics.hpp"
#include "gvcrand/cli_io.hpp"
#include "gvcrand/csv.hpp"
#include "gvcrand/experiments.hpp"
#include "gvcrand/measures.hpp"
#include "gvcrand/oracle.hpp"

using namespace gvcrand;

namespace {

struct Criterion {
    int number;
    std::string description;
    std::function<bool(std::string&)> run;
};

constexpr std::uint64_t kSeed = 20240901;

std::vector<int> log_spaced_n() {
    std::vector<int> values{1};
    const int count = 20;
    const double ratio = std::pow(500.0, 1.0 / (count - 1));
    double x = 1.0;
    for (int i = 1; i < count; ++i) {
        x *= ratio;
        const int v = static_cast<int>(std::lround(x));
        if (v != values.back()) values.push_back(v);
    }
    if (values.back() != 500) values.push_back(500);
    return values;
}

EnsembleSpec ensemble(int n, double mu, double mu_f, int instances) {
    EnsembleSpec spec;
    spec.params.n_sectors = n;
    spec.params.mu = mu;
    spec.params.mu_f = mu_f;
    spec.params.seed = kSeed;
    spec.instances = instances;
    spec.sector_index = 6;  // the paper's i = 7
    return spec;
}

// 1. Table 1 analytic column to 4 decimal places
bool criterion_table1_analytic(std::string& detail) {
    const std::vector<std::tuple<double, double, int, double>> rows = {
        {1.0, 0.001, 200, 0.10385}, {2.0, 0.005, 400, 0.29494}, {3.0, 0.001, 300, 0.06158},
        {1.2, 0.001, 500, 0.17260}, {1.5, 0.003, 350, 0.23955},
    };
    bool ok = true;
    std::ostringstream out;
    for (const auto& [mu, mu_f, n, expected] : rows) {
        const double value = covariance_exact(n, mu, mu_f);
        const bool row_ok = std::abs(value - expected) < 5e-5;
        ok = ok && row_ok;
        out << " C_" << n << "=" << value << (row_ok ? "" : "(MISMATCH)");
    }
    detail = out.str();
    return ok;
}

// 2. Table 1 sample column within 5 bootstrap SEs of the analytic value
bool criterion_table1_sample(std::string& detail) {
    const std::vector<std::tuple<double, double, int>> rows = {
        {1.0, 0.001, 200}, {2.0, 0.005, 400}, {3.0, 0.001, 300},
        {1.2, 0.001, 500}, {1.5, 0.003, 350},
    };
    const auto table = covariance_table(rows, 10000, 6, kSeed);
    bool ok = true;
    std::ostringstream out;
    for (const auto& row : table) {
        const double z = (row.sample_cov - row.analytic) / row.bootstrap_se;
        const bool row_ok = std::abs(z) < 5.0;
        ok = ok && row_ok;
        out << " N=" << row.n << ": " << row.sample_cov << " vs " << row.analytic << " (z="
            << z << (row_ok ? ")" : ", FAIL)");
    }
    detail = out.str();
    return ok;
}

// 3. Corollary 1 over the full grid
bool criterion_slope_grid(std::string& detail) {
    double worst = 0.0;
    int evaluated = 0;
    for (int n : log_spaced_n()) {
        for (double mu : {0.5, 1.0, 2.0, 3.0}) {
            for (double mu_f : {0.001, 0.01, 0.1}) {
                const double s = slope_exact(n, mu, mu_f);
                worst = std::max(worst, std::abs(s - 1.0));
                ++evaluated;
            }
        }
    }
    std::ostringstream out;
    out << " " << evaluated << " grid points, max |slope - 1| = " << worst;
    detail = out.str();
    return worst <= 1e-8;
}

// 4. Figs. 2-3: rank-1 estimators track the true measures in each figure's
// own configuration (Fig. 2: U pair at mu_F=0.1; Fig. 3: D pair at
// mu_F=0.01; the U pair also holds at 0.01).
bool criterion_rank1_tracking(std::string& detail) {
    struct Config {
        double mu_f;
        MeasureKind x, y;
        const char* label;
    };
    const std::vector<Config> configs = {
        {0.1, MeasureKind::U1, MeasureKind::UTilde, "U@muF=0.1"},
        {0.01, MeasureKind::U1, MeasureKind::UTilde, "U@muF=0.01"},
        {0.01, MeasureKind::D1, MeasureKind::DTilde, "D@muF=0.01"},
    };
    bool ok = true;
    std::ostringstream out;
    for (const auto& config : configs) {
        const ScatterResult scatter =
            scatter_uv(ensemble(100, 1.0, config.mu_f, 1000), config.x, config.y);
        const bool pair_ok = scatter.pearson_r > 0.99 && scatter.ols_slope >= 0.95 &&
                             scatter.ols_slope <= 1.05;
        ok = ok && pair_ok;
        out << " " << config.label << ": r=" << scatter.pearson_r
            << " slope=" << scatter.ols_slope << (pair_ok ? "" : " FAIL");
    }
    detail = out.str();
    return ok;
}

// 5. Fig. 4: U vs D scatter has slope ~ 1 for both true and rank-1 pairs
bool criterion_fig4(std::string& detail) {
    const EnsembleResult result = run_ensemble(ensemble(200, 1.0, 0.005, 1000));
    const ScatterResult true_pair =
        scatter_from_records(result.records, MeasureKind::U1, MeasureKind::D1);
    const ScatterResult rank1_pair =
        scatter_from_records(result.records, MeasureKind::UTilde, MeasureKind::DTilde);
    std::ostringstream out;
    out << " slope(U1,D1)=" << true_pair.ols_slope << " slope(U~,D~)=" << rank1_pair.ols_slope;
    detail = out.str();
    return true_pair.ols_slope >= 0.9 && true_pair.ols_slope <= 1.1 &&
           rank1_pair.ols_slope >= 0.9 && rank1_pair.ols_slope <= 1.1;
}

// 6. Figs. 6-7: robustness across disorder families
bool criterion_disorder_robustness(std::string& detail) {
    EnsembleSpec lognormal = ensemble(400, 1.0, 0.1, 1000);
    lognormal.params.disorder = LogNormal{1.0, 1.0, 6.67};
    const ScatterResult ln_scatter = scatter_uv(lognormal, MeasureKind::U1, MeasureKind::D1);

    EnsembleSpec uniform = ensemble(400, 1.0, 0.05, 1000);
    uniform.params.disorder = Uniform{};
    const ScatterResult un_scatter = scatter_uv(uniform, MeasureKind::U1, MeasureKind::D1);

    std::ostringstream out;
    out << " lognormal slope=" << ln_scatter.ols_slope
        << " uniform slope=" << un_scatter.ols_slope;
    detail = out.str();
    return ln_scatter.ols_slope >= 0.9 && ln_scatter.ols_slope <= 1.1 &&
           un_scatter.ols_slope >= 0.9 && un_scatter.ols_slope <= 1.1;
}

// 7. appendix curve: C_N positive and strictly increasing for all four pairs
bool criterion_curve(std::string& detail) {
    const std::vector<std::pair<double, double>> pairs = {
        {1.0, 0.1}, {2.0, 0.1}, {2.0, 0.05}, {2.0, 0.01}};
    bool ok = true;
    std::ostringstream out;
    for (const auto& [mu, mu_f] : pairs) {
        const auto curve = covariance_curve(500, mu, mu_f);
        bool monotone = true;
        double previous = 0.0;
        for (const auto& [n, c] : curve) {
            if (!(c > previous)) monotone = false;
            previous = c;
        }
        ok = ok && monotone;
        out << " (" << mu << "," << mu_f << "): C_500=" << curve.back().second
            << (monotone ? "" : " NOT-MONOTONE");
    }
    detail = out.str();
    return ok;
}

// 8. closed forms vs oracles
bool criterion_oracles(std::string& detail) {
    bool ok = true;
    std::ostringstream out;
    const std::vector<std::pair<double, double>> rate_pairs = {
        {1.0, 0.1}, {1.0, 0.001}, {2.0, 0.005}, {3.0, 0.001}};
    double worst_j = 0.0, worst_l = 0.0;
    for (const auto& [mu, mu_f] : rate_pairs) {
        for (int k = 2; k <= 502; ++k) {
            const double qj = quad_j(k, mu, mu_f).value;
            worst_j = std::max(worst_j, std::abs(j_integral(k, mu, mu_f) - qj) / std::abs(qj));
            const double ql = quad_l(k, mu, mu_f).value;
            worst_l = std::max(worst_l, std::abs(l_integral(k, mu, mu_f) - ql) / std::abs(ql));
        }
    }
    ok = worst_j < 1e-10 && worst_l < 1e-8;
    out << " worst J rel err " << worst_j << ", worst L rel err " << worst_l;

    for (int n : {1, 5, 20}) {
        ModelParams params;
        params.n_sectors = n;
        params.mu = 1.0;
        params.mu_f = 0.1;
        params.seed = kSeed;
        const MomentSet mc = moments_bruteforce(params, 1000000);
        const MomentSet an = moments_analytic(n, params.mu, params.mu_f);
        const double analytic[4] = {an.e_r, an.e_rp, an.e_rrp, an.e_r2};
        const double estimate[4] = {mc.e_r, mc.e_rp, mc.e_rrp, mc.e_r2};
        double worst_z = 0.0;
        for (int i = 0; i < 4; ++i)
            worst_z = std::max(worst_z, std::abs(estimate[i] - analytic[i]) / mc.std_errors[i]);
        ok = ok && worst_z < 4.0;
        out << "; N=" << n << " worst |z|=" << worst_z;
    }
    detail = out.str();
    return ok;
}

// 9. identity suite on 100 random instances
bool criterion_identities(std::string& detail) {
    double worst_u = 0.0, worst_d = 0.0, worst_neumann = 0.0;
    for (std::uint64_t inst = 0; inst < 100; ++inst) {
        ModelParams params;
        params.n_sectors = 50;
        params.mu = 1.0;
        params.mu_f = 0.01;
        params.seed = kSeed;
        const IoTable table = sample_table_instance(params, inst);
        const SubstochasticPair pair = build_pair(table);

        for (int i = 0; i < 50; ++i)
            if (pair.a_u(i, i) != pair.a_d(i, i)) {
                detail = " diagonal mismatch";
                return false;
            }

        const Eigen::VectorXd u1 = upstreamness_true(pair.a_u).values;
        const Eigen::VectorXd d1 = downstreamness_true(pair.a_d).values;
        const Eigen::VectorXd u2 = upstreamness_fally(table).values;
        const Eigen::VectorXd d2 = downstreamness_fally(table).values;
        worst_u = std::max(worst_u, (u1 - u2).lpNorm<Eigen::Infinity>());
        worst_d = std::max(worst_d, (d1 - d2).lpNorm<Eigen::Infinity>());

        const auto [u_tilde, d_tilde] = rank1_estimators(pair);
        if (!(u1.array() >= 1.0 - 1e-12).all() || !(d1.array() >= 1.0 - 1e-12).all() ||
            !(u_tilde.values.array() >= 1.0).all() || !(d_tilde.values.array() >= 1.0).all()) {
            detail = " a measure fell below 1";
            return false;
        }

        // Neumann partial sums: monotone, convergent to the solve
        Eigen::VectorXd previous = neumann_measure(pair.a_u, 1);
        for (int terms : {2, 4, 8, 16, 64}) {
            const Eigen::VectorXd current = neumann_measure(pair.a_u, terms);
            if (!((current.array() >= previous.array() - 1e-15).all())) {
                detail = " Neumann partial sums not monotone";
                return false;
            }
            previous = current;
        }
        worst_neumann =
            std::max(worst_neumann, (neumann_measure(pair.a_u, 400) - u1).lpNorm<Eigen::Infinity>());
    }
    std::ostringstream out;
    out << " max|U1-U2|=" << worst_u << " max|D1-D2|=" << worst_d
        << " max|Neumann-solve|=" << worst_neumann;
    detail = out.str();
    return worst_u < 1e-9 && worst_d < 1e-9 && worst_neumann < 1e-10;
}

// 10. byte-identical CSVs across worker counts
bool criterion_determinism(std::string& detail) {
    SimulateConfig config;
    config.spec = ensemble(50, 1.0, 0.01, 200);
    config.formats = {OutputFormat::Csv};

    std::vector<std::string> outputs;
    for (int workers : {1, 4, 8}) {
        config.spec.workers = workers;
        config.output_dir =
            std::filesystem::temp_directory_path() / ("gvcrand_acc10_w" + std::to_string(workers));
        const SimulateOutput out = cmd_simulate(config);
        outputs.push_back(read_text_file(out.records_csv));
        std::filesystem::remove_all(config.output_dir);
    }
    const bool ok = outputs[0] == outputs[1] && outputs[1] == outputs[2];
    detail = ok ? " identical bytes for workers {1,4,8}" : " CSV bytes differ across worker counts";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    const std::vector<Criterion> criteria = {
        {1, "Table 1 analytic column to 4 decimals", criterion_table1_analytic},
        {2, "Table 1 sample column within 5 bootstrap SEs (m=10^4, i=7)", criterion_table1_sample},
        {3, "slope = 1 within 1e-8 over the N x mu x mu_F grid", criterion_slope_grid},
        {4, "Figs. 2-3: rank-1 vs true, Pearson > 0.99, slope in [0.95,1.05]",
         criterion_rank1_tracking},
        {5, "Fig. 4: (U1,D1) and (U~,D~) slopes in [0.9,1.1]", criterion_fig4},
        {6, "Figs. 6-7: log-normal and uniform (U1,D1) slopes in [0.9,1.1]",
         criterion_disorder_robustness},
        {7, "C_N curve positive and strictly increasing, four rate pairs", criterion_curve},
        {8, "oracle equivalence: quadrature, Monte Carlo, 4-SE moments", criterion_oracles},
        {9, "identity suite on 100 instances (N=50)", criterion_identities},
        {10, "byte-identical CSVs for worker counts {1,4,8}", criterion_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (!selected.empty() && !selected.contains(criterion.number)) continue;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string(" exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  criterion %2d (%.1fs): %s |%s\n", ok ? "PASS" : "FAIL",
                    criterion.number, seconds, criterion.description.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
