#include "gvcrand/cli_io.hpp"

#include <cctype>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gvcrand/analytics.hpp"
#include "gvcrand/csv.hpp"
#include "gvcrand/empirical.hpp"
#include "gvcrand/oracle.hpp"
#include "gvcrand/svg.hpp"

namespace gvcrand {

namespace {

using nlohmann::json;

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

json scatter_json(const ScatterResult& scatter, MeasureKind x, MeasureKind y) {
    return json{
        {"x", measure_name(x)},
        {"y", measure_name(y)},
        {"n_points", scatter.points.size()},
        {"slope", scatter.ols_slope},
        {"intercept", scatter.ols_intercept},
        {"pearson_r", scatter.pearson_r},
        {"covariance", scatter.sample_covariance},
    };
}

} // namespace

std::set<OutputFormat> parse_formats(const std::string& csv_list) {
    std::set<OutputFormat> formats;
    std::stringstream ss(csv_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string name = lower(item);
        if (name.empty()) continue;
        if (name == "csv") formats.insert(OutputFormat::Csv);
        else if (name == "json") formats.insert(OutputFormat::Json);
        else if (name == "svg") formats.insert(OutputFormat::Svg);
        else throw std::invalid_argument("unknown output format '" + item + "'");
    }
    if (formats.empty()) throw std::invalid_argument("no output formats requested");
    return formats;
}

SimulateOutput cmd_simulate(const SimulateConfig& config) {
    const EnsembleResult result = run_ensemble(config.spec);

    SimulateOutput output;
    output.rejected_instances = result.rejected_instances;
    std::filesystem::create_directories(config.output_dir);

    if (config.formats.contains(OutputFormat::Csv)) {
        std::string text = "instance,U1,D1,U_tilde,D_tilde,violations\n";
        for (std::size_t i = 0; i < result.records.size(); ++i) {
            const auto& rec = result.records[i];
            text += csv_join({std::to_string(i), format_double(rec.u1), format_double(rec.d1),
                              format_double(rec.u_tilde), format_double(rec.d_tilde),
                              std::to_string(rec.violations)});
            text += '\n';
        }
        output.records_csv = config.output_dir / "records.csv";
        write_text_file(output.records_csv, text);
    }

    const bool want_summaries = config.formats.contains(OutputFormat::Json) ||
                                config.formats.contains(OutputFormat::Svg);
    for (const auto& [x_kind, y_kind] : config.scatters) {
        if (!want_summaries) break;
        const std::string stem =
            std::string("scatter_") + measure_name(x_kind) + "_" + measure_name(y_kind);
        ScatterResult scatter;
        std::string degenerate;
        try {
            scatter = scatter_from_records(result.records, x_kind, y_kind);
        } catch (const std::exception& e) {
            degenerate = e.what();  // constant points (e.g. sparsity = 1)
        }
        if (config.formats.contains(OutputFormat::Json)) {
            json summary;
            if (degenerate.empty()) {
                summary = scatter_json(scatter, x_kind, y_kind);
            } else {
                summary = json{{"x", measure_name(x_kind)},
                               {"y", measure_name(y_kind)},
                               {"error", degenerate}};
            }
            summary["instances"] = config.spec.instances;
            summary["sector"] = config.spec.sector_index + 1;  // 1-based, as in reports
            summary["seed"] = config.spec.params.seed;
            const auto path = config.output_dir / (stem + ".json");
            write_text_file(path, summary.dump(2) + "\n");
            output.summaries.push_back(path);
        }
        if (config.formats.contains(OutputFormat::Svg) && degenerate.empty()) {
            SvgScatterOptions svg;
            svg.x_label = measure_name(x_kind);
            svg.y_label = measure_name(y_kind);
            std::ostringstream title;
            title << measure_name(y_kind) << " vs " << measure_name(x_kind) << " (sector "
                  << config.spec.sector_index + 1 << ", m=" << config.spec.instances << ")";
            svg.title = title.str();
            const auto path = config.output_dir / (stem + ".svg");
            write_scatter_svg(path, scatter.points, svg);
            output.summaries.push_back(path);
        }
    }
    return output;
}

void cmd_analytic(const AnalyticConfig& config) {
    if (config.n_values.empty() || config.mu_values.empty() || config.mu_f_values.empty())
        throw std::invalid_argument("cmd_analytic: empty parameter grid");

    std::string text = "n,mu,mu_f,phi,E_r,E_rp,E_rrp,E_r2,C_N,slope\n";
    for (int n : config.n_values) {
        for (double mu : config.mu_values) {
            for (double mu_f : config.mu_f_values) {
                const Phi phi = Phi::from_rates(mu, mu_f);
                const MomentSet m = moments_analytic(n, mu, mu_f);
                std::string c_n, slope;
                if (m.e_r < 1.0 && m.e_rp < 1.0) {
                    c_n = format_double(covariance_exact(n, mu, mu_f));
                    slope = format_double(slope_exact(n, mu, mu_f));
                } else {
                    std::cerr << "warning: E[r] or E[r'] >= 1 at n=" << n << ", mu=" << mu
                              << ", mu_f=" << mu_f << "; covariance undefined\n";
                }
                text += csv_join({std::to_string(n), format_double(mu), format_double(mu_f),
                                  format_double(phi.value), format_double(m.e_r),
                                  format_double(m.e_rp), format_double(m.e_rrp),
                                  format_double(m.e_r2), c_n, slope});
                text += '\n';
            }
        }
    }
    write_text_file(config.out_csv, text);
}

void cmd_table1(const Table1Config& config) {
    const auto rows = covariance_table(config.rows, config.instances, config.sector_index,
                                       config.seed, config.workers);
    std::string text = "mu,mu_f,n,sample_cov,bootstrap_se,analytic_C_N\n";
    for (const auto& row : rows) {
        text += csv_join({format_double(row.mu), format_double(row.mu_f), std::to_string(row.n),
                          format_double(row.sample_cov), format_double(row.bootstrap_se),
                          format_double(row.analytic)});
        text += '\n';
    }
    write_text_file(config.out_csv, text);
}

void cmd_curve(const CurveConfig& config) {
    std::string text = "mu,mu_f,n,C_N\n";
    for (const auto& [mu, mu_f] : config.rate_pairs) {
        for (const auto& [n, c] : covariance_curve(config.n_max, mu, mu_f)) {
            text += csv_join(
                {format_double(mu), format_double(mu_f), std::to_string(n), format_double(c)});
            text += '\n';
        }
    }
    write_text_file(config.out_csv, text);
}

void cmd_sparsity(const SparsityConfig& config) {
    const auto sweep = sparsity_sweep(config.spec, config.sparsities);
    std::string text = "sparsity,slope,intercept,pearson_r,covariance,points,excluded\n";
    for (const auto& point : sweep) {
        if (point.excluded > 0)
            std::cerr << "warning: sparsity " << point.sparsity << ": " << point.excluded
                      << " instance(s) excluded (singular system)\n";
        text += csv_join({format_double(point.sparsity), format_double(point.scatter.ols_slope),
                          format_double(point.scatter.ols_intercept),
                          format_double(point.scatter.pearson_r),
                          format_double(point.scatter.sample_covariance),
                          std::to_string(point.scatter.points.size()),
                          std::to_string(point.excluded)});
        text += '\n';
    }
    write_text_file(config.out_csv, text);
}

namespace {

struct CheckCollector {
    OracleCheckReport report;

    void add(bool pass, const std::string& what) {
        report.lines.push_back(std::string(pass ? "PASS  " : "FAIL  ") + what);
        if (!pass) ++report.failures;
    }
};

} // namespace

OracleCheckReport cmd_oracle_check(const OracleCheckConfig& config) {
    CheckCollector checks;

    // closed-form J and L against adaptive quadrature
    const std::vector<std::pair<double, double>> rate_pairs = {
        {1.0, 0.1}, {1.0, 0.001}, {2.0, 0.005}, {3.0, 0.001}};
    for (const auto& [mu, mu_f] : rate_pairs) {
        double worst_j = 0.0, worst_l = 0.0;
        int worst_jk = 0, worst_lk = 0;
        for (int k = 2; k <= 502; k += 10) {
            const double qj = quad_j(k, mu, mu_f).value;
            const double rel_j = std::abs(j_integral(k, mu, mu_f) - qj) / std::abs(qj);
            if (rel_j > worst_j) {
                worst_j = rel_j;
                worst_jk = k;
            }
            const double ql = quad_l(k, mu, mu_f).value;
            const double rel_l = std::abs(l_integral(k, mu, mu_f) - ql) / std::abs(ql);
            if (rel_l > worst_l) {
                worst_l = rel_l;
                worst_lk = k;
            }
        }
        std::ostringstream line_j;
        line_j << "J closed form vs quadrature, mu=" << mu << " mu_f=" << mu_f
               << ": worst rel err " << worst_j << " at k=" << worst_jk << " (tol "
               << config.tol_j << ")";
        checks.add(worst_j < config.tol_j, line_j.str());
        std::ostringstream line_l;
        line_l << "L closed form vs quadrature, mu=" << mu << " mu_f=" << mu_f
               << ": worst rel err " << worst_l << " at k=" << worst_lk << " (tol "
               << config.tol_l << ")";
        checks.add(worst_l < config.tol_l, line_l.str());
    }

    // brute-force moments against the analytic formulas
    for (int n : {1, 5, 20}) {
        ModelParams params;
        params.n_sectors = n;
        params.mu = 1.0;
        params.mu_f = 0.1;
        params.seed = config.seed;
        const MomentSet mc = moments_bruteforce(params, config.samples);
        const MomentSet an = moments_analytic(n, params.mu, params.mu_f);
        const double analytic[4] = {an.e_r, an.e_rp, an.e_rrp, an.e_r2};
        const double estimate[4] = {mc.e_r, mc.e_rp, mc.e_rrp, mc.e_r2};
        const char* names[4] = {"E[r]", "E[r']", "E[rr']", "E[r^2]"};
        for (int i = 0; i < 4; ++i) {
            const double z = (estimate[i] - analytic[i]) / mc.std_errors[i];
            std::ostringstream line;
            line << "moments N=" << n << " " << names[i] << ": MC " << estimate[i]
                 << " vs analytic " << analytic[i] << " (z = " << z << ")";
            checks.add(std::abs(z) < 4.0, line.str());
        }
    }

    // Neumann series against the linear solve
    {
        ModelParams params;
        params.n_sectors = 50;
        params.mu = 1.0;
        params.mu_f = 0.01;
        params.seed = config.seed;
        const IoTable table = sample_table_instance(params, 0);
        const SubstochasticPair pair = build_pair(table);
        const Eigen::VectorXd series = neumann_measure(pair.a_u, 600);
        const Eigen::VectorXd solved = upstreamness_true(pair.a_u).values;
        const double gap = (series - solved).lpNorm<Eigen::Infinity>();
        std::ostringstream line;
        line << "Neumann (600 terms) vs solve, N=50: max gap " << gap;
        checks.add(gap < 1e-10, line.str());
    }

    return checks.report;
}

MeasureEmpiricalOutput cmd_measure_empirical(const std::filesystem::path& table_csv,
                                             const std::filesystem::path& output_dir,
                                             const std::set<OutputFormat>& formats) {
    const EmpiricalTable empirical = ingest_table(table_csv);
    const IoTable table = to_io_table(empirical);
    const SubstochasticPair pair = build_pair(table);

    const MeasureVector u1 = upstreamness_true(pair.a_u);
    const MeasureVector d1 = downstreamness_true(pair.a_d);
    const auto [u_tilde, d_tilde] = rank1_estimators(pair);

    MeasureEmpiricalOutput output;
    output.density = empirical.density;

    const int n = empirical.size();
    std::vector<double> u1_v(u1.values.data(), u1.values.data() + n);
    std::vector<double> d1_v(d1.values.data(), d1.values.data() + n);
    if (n >= 2 && sample_variance(u1_v) > 0.0) {
        output.u1_d1_slope = ols_fit(u1_v, d1_v).slope;
    } else {
        output.u1_d1_slope = std::numeric_limits<double>::quiet_NaN();
    }

    std::filesystem::create_directories(output_dir);
    if (formats.contains(OutputFormat::Csv)) {
        std::string text = "sector,U1,D1,U_tilde,D_tilde\n";
        for (int i = 0; i < n; ++i) {
            text += csv_join({empirical.sector_names[static_cast<std::size_t>(i)],
                              format_double(u1.values(i)), format_double(d1.values(i)),
                              format_double(u_tilde.values(i)), format_double(d_tilde.values(i))});
            text += '\n';
        }
        output.measures_csv = output_dir / "measures.csv";
        write_text_file(output.measures_csv, text);
    }
    if (formats.contains(OutputFormat::Json)) {
        json summary{
            {"sectors", n},
            {"density", empirical.density},
            {"u1_d1_ols_slope", output.u1_d1_slope},
            {"d_rowsum_violations", pair.d_rowsum_violations},
        };
        output.summary_json = output_dir / "summary.json";
        write_text_file(output.summary_json, summary.dump(2) + "\n");
    }
    if (formats.contains(OutputFormat::Svg)) {
        std::vector<std::pair<double, double>> points;
        points.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) points.emplace_back(u1.values(i), d1.values(i));
        SvgScatterOptions svg;
        svg.title = "Empirical sectors";
        svg.x_label = "U1";
        svg.y_label = "D1";
        write_scatter_svg(output_dir / "measures.svg", points, svg);
    }
    return output;
}

} // namespace gvcrand
