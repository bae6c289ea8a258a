#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gvcrand/analytics.hpp"
#include "gvcrand/cli_io.hpp"
#include "gvcrand/csv.hpp"
#include "gvcrand/empirical.hpp"

namespace {

using namespace gvcrand;

struct CommonModelFlags {
    int n = 100;
    double mu = 1.0;
    double mu_f = 0.1;
    std::string disorder = "exp";
    double lognormal_mu_prime = 1.0;
    double lognormal_sigma = 1.0;
    double lognormal_muf_prime = 6.67;
    double sparsity = 0.0;
    std::uint64_t seed = 0;
    int instances = 1000;
    int sector = 7;  // 1-based, as in the paper
    int workers = 0;
    std::string policy = "flag";

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n, "number of sectors N")->check(CLI::PositiveNumber);
        cmd->add_option("--mu", mu, "entry rate (mean entry 1/mu)")->check(CLI::PositiveNumber);
        cmd->add_option("--muf", mu_f, "final-demand rate (mean 1/mu_f)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--disorder", disorder, "entry distribution")
            ->check(CLI::IsMember({"exp", "lognormal", "uniform"}));
        cmd->add_option("--lognormal-mu-prime", lognormal_mu_prime,
                        "log-normal entries: log-mean mu'");
        cmd->add_option("--lognormal-sigma", lognormal_sigma, "log-normal entries: log-sd")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--lognormal-muf-prime", lognormal_muf_prime,
                        "log-normal final demand: log-mean mu_F'");
        cmd->add_option("--sparsity", sparsity, "probability an entry of A is zeroed")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--seed", seed, "master RNG seed")->envname("GVC_RANDLAB_SEED");
        cmd->add_option("--instances", instances, "ensemble size m")->check(CLI::PositiveNumber);
        cmd->add_option("--sector", sector, "sector index i (1-based, as in reports)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--workers", workers, "worker threads (0 = hardware)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--policy", policy, "A_D row-sum violation policy")
            ->check(CLI::IsMember({"flag", "reject"}));
    }

    EnsembleSpec to_spec() const {
        EnsembleSpec spec;
        spec.params.n_sectors = n;
        spec.params.mu = mu;
        spec.params.mu_f = mu_f;
        if (disorder == "lognormal") {
            spec.params.disorder =
                LogNormal{lognormal_mu_prime, lognormal_sigma, lognormal_muf_prime};
        } else if (disorder == "uniform") {
            spec.params.disorder = Uniform{};
        }
        spec.params.sparsity = sparsity;
        spec.params.seed = seed;
        spec.instances = instances;
        spec.sector_index = sector - 1;
        spec.workers = workers;
        spec.policy = policy == "reject" ? ViolationPolicy::Reject : ViolationPolicy::Flag;
        return spec;
    }
};

void apply_preset(CommonModelFlags& flags, const std::string& preset) {
    if (preset == "fig2") {
        flags.disorder = "exp";
        flags.mu = 1.0;
        flags.mu_f = 0.1;
        flags.n = 100;
    } else if (preset == "fig3") {
        flags.disorder = "exp";
        flags.mu = 1.0;
        flags.mu_f = 0.01;
        flags.n = 100;
    } else if (preset == "fig4") {
        flags.disorder = "exp";
        flags.mu = 1.0;
        flags.mu_f = 0.005;
        flags.n = 200;
    } else if (preset == "fig6") {
        flags.disorder = "lognormal";
        flags.lognormal_mu_prime = 1.0;
        flags.lognormal_muf_prime = 6.67;
        flags.n = 400;
    } else if (preset == "fig7") {
        flags.disorder = "uniform";
        flags.mu = 1.0;
        flags.mu_f = 0.05;
        flags.n = 400;
    }
    flags.instances = 1000;
    flags.sector = 7;
}

MeasureKind parse_kind(const std::string& name) {
    if (name == "u1") return MeasureKind::U1;
    if (name == "d1") return MeasureKind::D1;
    if (name == "u_tilde") return MeasureKind::UTilde;
    if (name == "d_tilde") return MeasureKind::DTilde;
    throw CLI::ValidationError("measure must be one of u1, d1, u_tilde, d_tilde");
}

std::vector<int> log_spaced(int lo, int hi, int count) {
    std::vector<int> values;
    double ratio = std::pow(static_cast<double>(hi) / lo, 1.0 / (count - 1));
    double x = lo;
    for (int i = 0; i < count; ++i) {
        const int v = static_cast<int>(std::lround(x));
        if (values.empty() || v != values.back()) values.push_back(v);
        x *= ratio;
    }
    if (values.back() != hi) values.push_back(hi);
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random input-output table laboratory: upstreamness/downstreamness "
                 "correlations, exact covariance formulas and their oracles"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file (flags win)");
    app.get_config_formatter_base()->comment('#');

    std::string out_dir = "out";
    std::string formats = "csv,json";

    // simulate / scatter
    CommonModelFlags sim_flags;
    std::string preset;
    auto* simulate = app.add_subcommand("simulate", "sample an ensemble, write records + scatters");
    sim_flags.attach(simulate);
    simulate->add_option("--preset", preset, "parameter preset")
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig6", "fig7"}));
    simulate->add_option("--out", out_dir, "output directory");
    simulate->add_option("--format", formats, "comma list of csv,json,svg");

    CommonModelFlags scatter_flags;
    std::string x_measure = "u_tilde", y_measure = "u1";
    auto* scatter = app.add_subcommand("scatter", "one scatter pair over an ensemble");
    scatter_flags.attach(scatter);
    scatter->add_option("--x", x_measure, "x measure: u1, d1, u_tilde, d_tilde");
    scatter->add_option("--y", y_measure, "y measure");
    scatter->add_option("--out", out_dir, "output directory");
    scatter->add_option("--format", formats, "comma list of csv,json,svg");

    // analytic
    std::vector<int> n_values{200};
    std::vector<double> mu_values{1.0};
    std::vector<double> mu_f_values{0.001};
    std::string analytic_out = "analytic.csv";
    bool slope_grid = false;
    auto* analytic = app.add_subcommand("analytic", "closed-form moments, C_N and slope grid");
    analytic->add_option("--n", n_values, "N values");
    analytic->add_option("--mu", mu_values, "mu values");
    analytic->add_option("--muf", mu_f_values, "mu_F values");
    analytic->add_flag("--slope-grid", slope_grid,
                       "use the full verification grid (log-spaced N x mu x mu_F)");
    analytic->add_option("--out", analytic_out, "output CSV path");

    // table1
    Table1Config table1_config;
    int table1_sector = 7;
    auto* table1 = app.add_subcommand("table1", "sample vs analytic covariance table");
    table1->add_option("--instances", table1_config.instances, "instances per row")
        ->check(CLI::PositiveNumber);
    table1->add_option("--sector", table1_sector, "sector (1-based)")->check(CLI::PositiveNumber);
    table1->add_option("--seed", table1_config.seed, "master seed")->envname("GVC_RANDLAB_SEED");
    table1->add_option("--workers", table1_config.workers, "worker threads (0 = hardware)");
    table1->add_option("--out", table1_config.out_csv, "output CSV path");

    // curve
    CurveConfig curve_config;
    auto* curve = app.add_subcommand("curve", "C_N for N = 1..n_max, four rate pairs");
    curve->add_option("--n-max", curve_config.n_max, "largest N")->check(CLI::PositiveNumber);
    curve->add_option("--out", curve_config.out_csv, "output CSV path");

    // sparsity
    CommonModelFlags sparsity_flags;
    std::vector<double> sparsities{0.0, 0.08, 0.3};
    std::string sparsity_out = "sparsity.csv";
    auto* sparsity = app.add_subcommand("sparsity", "U1-D1 slope under sparsification");
    sparsity_flags.attach(sparsity);
    sparsity->add_option("--sparsities", sparsities, "sparsity levels");
    sparsity->add_option("--out", sparsity_out, "output CSV path");

    // oracle-check
    OracleCheckConfig oracle_config;
    auto* oracle = app.add_subcommand("oracle-check", "closed forms vs independent oracles");
    oracle->add_option("--tol-j", oracle_config.tol_j, "J relative tolerance");
    oracle->add_option("--tol-l", oracle_config.tol_l, "L relative tolerance");
    oracle->add_option("--samples", oracle_config.samples, "Monte Carlo samples per moment check");
    oracle->add_option("--seed", oracle_config.seed, "master seed")->envname("GVC_RANDLAB_SEED");

    // ingest / measure
    std::string table_path;
    auto* ingest = app.add_subcommand("ingest", "validate an empirical I-O table CSV");
    ingest->add_option("--in", table_path, "table CSV path")->required();

    std::string measure_in;
    auto* measure = app.add_subcommand("measure", "measures for an empirical I-O table");
    measure->add_option("--in", measure_in, "table CSV path")->required();
    measure->add_option("--out", out_dir, "output directory");
    measure->add_option("--format", formats, "comma list of csv,json,svg");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            if (!preset.empty()) {
                CommonModelFlags defaults;
                apply_preset(defaults, preset);
                // explicit flags win over the preset
                auto keep = [&](const char* flag, auto member) {
                    if (simulate->count(flag) == 0) sim_flags.*member = defaults.*member;
                };
                keep("--n", &CommonModelFlags::n);
                keep("--mu", &CommonModelFlags::mu);
                keep("--muf", &CommonModelFlags::mu_f);
                keep("--disorder", &CommonModelFlags::disorder);
                keep("--lognormal-mu-prime", &CommonModelFlags::lognormal_mu_prime);
                keep("--lognormal-muf-prime", &CommonModelFlags::lognormal_muf_prime);
                keep("--instances", &CommonModelFlags::instances);
                keep("--sector", &CommonModelFlags::sector);
            }
            SimulateConfig config;
            config.spec = sim_flags.to_spec();
            config.output_dir = out_dir;
            config.formats = parse_formats(formats);
            const SimulateOutput output = cmd_simulate(config);
            std::cout << "wrote " << output.records_csv.string() << " and "
                      << output.summaries.size() << " summary file(s)";
            if (output.rejected_instances > 0)
                std::cout << " (" << output.rejected_instances << " rejected resamples)";
            std::cout << "\n";
        } else if (scatter->parsed()) {
            SimulateConfig config;
            config.spec = scatter_flags.to_spec();
            config.output_dir = out_dir;
            config.formats = parse_formats(formats);
            config.scatters = {{parse_kind(x_measure), parse_kind(y_measure)}};
            cmd_simulate(config);
            std::cout << "wrote scatter outputs to " << out_dir << "\n";
        } else if (analytic->parsed()) {
            AnalyticConfig config;
            if (slope_grid) {
                config.n_values = log_spaced(1, 500, 20);
                config.mu_values = {0.5, 1.0, 2.0, 3.0};
                config.mu_f_values = {0.001, 0.01, 0.1};
            } else {
                config.n_values = n_values;
                config.mu_values = mu_values;
                config.mu_f_values = mu_f_values;
            }
            config.out_csv = analytic_out;
            for (double mu : config.mu_values)
                for (double mu_f : config.mu_f_values)
                    if (!(mu_f < mu))
                        std::cerr << "warning: mu_f=" << mu_f << " >= mu=" << mu
                                  << " is outside the recommended regime\n";
            cmd_analytic(config);
            std::cout << "wrote " << config.out_csv.string() << "\n";
        } else if (table1->parsed()) {
            table1_config.sector_index = table1_sector - 1;
            cmd_table1(table1_config);
            std::cout << "wrote " << table1_config.out_csv.string() << "\n";
        } else if (curve->parsed()) {
            cmd_curve(curve_config);
            std::cout << "wrote " << curve_config.out_csv.string() << "\n";
        } else if (sparsity->parsed()) {
            SparsityConfig config;
            config.spec = sparsity_flags.to_spec();
            config.sparsities = sparsities;
            config.out_csv = sparsity_out;
            cmd_sparsity(config);
            std::cout << "wrote " << config.out_csv.string() << "\n";
        } else if (oracle->parsed()) {
            const OracleCheckReport report = cmd_oracle_check(oracle_config);
            for (const auto& line : report.lines) std::cout << line << "\n";
            if (report.failures > 0) {
                std::cout << report.failures << " check(s) failed\n";
                return 1;
            }
            std::cout << "all " << report.lines.size() << " checks passed\n";
        } else if (ingest->parsed()) {
            const EmpiricalTable table = ingest_table(table_path);
            nlohmann::json summary{{"sectors", table.size()},
                                   {"density", table.density},
                                   {"value_added_given", table.value_added_given}};
            std::cout << summary.dump(2) << "\n";
        } else if (measure->parsed()) {
            const MeasureEmpiricalOutput output =
                cmd_measure_empirical(measure_in, out_dir, parse_formats(formats));
            std::cout << "density " << format_double(output.density) << ", U1-D1 OLS slope "
                      << format_double(output.u1_d1_slope) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
