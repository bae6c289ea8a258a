#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gvcrand/experiments.hpp"

namespace gvcrand {

enum class OutputFormat { Csv, Json, Svg };

std::set<OutputFormat> parse_formats(const std::string& csv_list);

struct SimulateConfig {
    EnsembleSpec spec;
    std::filesystem::path output_dir = ".";
    std::set<OutputFormat> formats = {OutputFormat::Csv, OutputFormat::Json};
    // scatter pairs to summarise, as (x, y)
    std::vector<std::pair<MeasureKind, MeasureKind>> scatters = {
        {MeasureKind::U1, MeasureKind::D1},
        {MeasureKind::UTilde, MeasureKind::DTilde},
    };
};

struct SimulateOutput {
    std::filesystem::path records_csv;
    std::vector<std::filesystem::path> summaries;
    long rejected_instances = 0;
};

// Runs the ensemble and writes records.csv
// (header: instance,U1,D1,U_tilde,D_tilde,violations), one scatter summary
// JSON per requested pair, and optional SVGs with the slope-1 line.
SimulateOutput cmd_simulate(const SimulateConfig& config);

struct AnalyticConfig {
    std::vector<int> n_values;
    std::vector<double> mu_values;
    std::vector<double> mu_f_values;
    std::filesystem::path out_csv = "analytic.csv";
};

// Cross product of the three grids; one CSV row per combination with columns
// n,mu,mu_f,phi,E_r,E_rp,E_rrp,E_r2,C_N,slope. Combinations with E[r] >= 1
// keep their moment columns, leave C_N/slope empty and warn on stderr.
void cmd_analytic(const AnalyticConfig& config);

struct Table1Config {
    std::vector<std::tuple<double, double, int>> rows = {
        {1.0, 0.001, 200}, {2.0, 0.005, 400}, {3.0, 0.001, 300},
        {1.2, 0.001, 500}, {1.5, 0.003, 350},
    };
    int instances = 10000;
    int sector_index = 6;  // paper's i = 7
    std::uint64_t seed = 0;
    int workers = 0;
    std::filesystem::path out_csv = "table1.csv";
};

void cmd_table1(const Table1Config& config);

struct CurveConfig {
    int n_max = 500;
    std::vector<std::pair<double, double>> rate_pairs = {
        {1.0, 0.1}, {2.0, 0.1}, {2.0, 0.05}, {2.0, 0.01},
    };
    std::filesystem::path out_csv = "curve.csv";
};

void cmd_curve(const CurveConfig& config);

struct SparsityConfig {
    EnsembleSpec spec;
    std::vector<double> sparsities = {0.0, 0.08, 0.3};
    std::filesystem::path out_csv = "sparsity.csv";
};

void cmd_sparsity(const SparsityConfig& config);

struct OracleCheckConfig {
    double tol_j = 1e-10;
    double tol_l = 1e-8;
    long samples = 1000000;
    std::uint64_t seed = 0;
};

struct OracleCheckReport {
    std::vector<std::string> lines;
    int failures = 0;
};

// Quadrature vs closed-form J/L, brute-force vs analytic moments, Neumann vs
// linear solve; one line per check.
OracleCheckReport cmd_oracle_check(const OracleCheckConfig& config);

struct MeasureEmpiricalOutput {
    std::filesystem::path measures_csv;
    std::filesystem::path summary_json;
    double density = 0.0;
    double u1_d1_slope = 0.0;
};

// Per-sector U1, D1, U_tilde, D_tilde for an ingested table, plus density and
// the (U1, D1) OLS slope across sectors.
MeasureEmpiricalOutput cmd_measure_empirical(const std::filesystem::path& table_csv,
                                             const std::filesystem::path& output_dir,
                                             const std::set<OutputFormat>& formats = {
                                                 OutputFormat::Csv, OutputFormat::Json});

} // namespace gvcrand
