#include "gvcrand/empirical.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gvcrand/csv.hpp"

namespace gvcrand {

namespace {

double parse_number(const std::string& field, const std::string& where) {
    try {
        std::size_t used = 0;
        const double value = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error("ingest_table: cannot parse number '" + field + "' at " + where);
    }
}

double compute_density(const Eigen::MatrixXd& flows) {
    const auto total = flows.size();
    if (total == 0) return 0.0;
    return static_cast<double>((flows.array() != 0.0).count()) / static_cast<double>(total);
}

} // namespace

EmpiricalTable ingest_table(const std::filesystem::path& path, double identity_rel_tol) {
    const auto rows = parse_csv(read_text_file(path));
    if (rows.size() < 2) throw std::runtime_error("ingest_table: file has no data rows");

    const auto& header = rows[0];
    if (header.size() < 3 || header.back() != "FINAL_DEMAND")
        throw std::runtime_error(
            "ingest_table: header must be 'sector,<names...>,FINAL_DEMAND'");
    const int n = static_cast<int>(header.size()) - 2;

    EmpiricalTable table;
    table.sector_names.assign(header.begin() + 1, header.end() - 1);
    table.flows.resize(n, n);
    table.final_demand.resize(n);
    table.value_added = Eigen::VectorXd::Zero(n);

    if (rows.size() < static_cast<std::size_t>(n) + 1)
        throw std::runtime_error("ingest_table: expected " + std::to_string(n) + " flow rows");

    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i) + 1];
        if (row.size() != header.size()) {
            std::ostringstream msg;
            msg << "ingest_table: row " << i + 1 << " has " << row.size() << " fields, expected "
                << header.size();
            throw std::runtime_error(msg.str());
        }
        if (row[0] != table.sector_names[static_cast<std::size_t>(i)]) {
            std::ostringstream msg;
            msg << "ingest_table: row " << i + 1 << " labeled '" << row[0]
                << "' but header names sector '" << table.sector_names[static_cast<std::size_t>(i)]
                << "' here";
            throw std::runtime_error(msg.str());
        }
        for (int j = 0; j < n; ++j) {
            std::ostringstream where;
            where << "flow cell (" << row[0] << "," << table.sector_names[static_cast<std::size_t>(j)]
                  << ")";
            const double value = parse_number(row[static_cast<std::size_t>(j) + 1], where.str());
            if (!(value >= 0.0)) {
                throw std::runtime_error("ingest_table: negative flow at " + where.str() + ": " +
                                         row[static_cast<std::size_t>(j) + 1]);
            }
            table.flows(i, j) = value;
        }
        const double demand = parse_number(row.back(), "FINAL_DEMAND of row " + row[0]);
        if (!(demand >= 0.0))
            throw std::runtime_error("ingest_table: negative final demand in row " + row[0]);
        table.final_demand(i) = demand;
    }

    // optional trailing VALUE_ADDED row
    for (std::size_t r = static_cast<std::size_t>(n) + 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.empty() || (row.size() == 1 && row[0].empty())) continue;
        if (row[0] != "VALUE_ADDED")
            throw std::runtime_error("ingest_table: unexpected trailing row '" + row[0] + "'");
        if (row.size() < static_cast<std::size_t>(n) + 1)
            throw std::runtime_error("ingest_table: VALUE_ADDED row too short");
        for (int j = 0; j < n; ++j)
            table.value_added(j) =
                parse_number(row[static_cast<std::size_t>(j) + 1], "VALUE_ADDED column " +
                                                                       std::to_string(j + 1));
        table.value_added_given = true;
    }

    // accounting identities
    const Eigen::VectorXd y_out = table.flows.rowwise().sum() + table.final_demand;
    const double y_scale = y_out.cwiseAbs().maxCoeff();
    std::ostringstream report;
    int violations = 0;
    for (int i = 0; i < n; ++i) {
        if (!(y_out(i) > 0.0)) {
            ++violations;
            report << "  row " << table.sector_names[static_cast<std::size_t>(i)]
                   << ": zero gross output\n";
        }
        if (table.value_added_given) {
            const double y_in = table.flows.col(i).sum() + table.value_added(i);
            const double gap = std::abs(y_out(i) - y_in);
            if (gap > identity_rel_tol * std::max(y_scale, 1.0)) {
                ++violations;
                report << "  row " << table.sector_names[static_cast<std::size_t>(i)]
                       << ": output-side Y=" << format_double(y_out(i))
                       << " vs input-side Y=" << format_double(y_in) << "\n";
            }
        }
    }
    if (violations > 0) {
        std::ostringstream msg;
        msg << "ingest_table: accounting identities violated in " << violations << " row(s):\n"
            << report.str();
        throw std::runtime_error(msg.str());
    }

    if (!table.value_added_given)
        table.value_added = y_out - table.flows.colwise().sum().transpose();
    table.density = compute_density(table.flows);
    return table;
}

void write_table(const EmpiricalTable& table, const std::filesystem::path& path) {
    const int n = table.size();
    std::string text;
    {
        std::vector<std::string> header;
        header.reserve(static_cast<std::size_t>(n) + 2);
        header.emplace_back("sector");
        for (const auto& name : table.sector_names) header.push_back(name);
        header.emplace_back("FINAL_DEMAND");
        text += csv_join(header);
        text += '\n';
    }
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> row;
        row.reserve(static_cast<std::size_t>(n) + 2);
        row.push_back(table.sector_names[static_cast<std::size_t>(i)]);
        for (int j = 0; j < n; ++j) row.push_back(format_double(table.flows(i, j)));
        row.push_back(format_double(table.final_demand(i)));
        text += csv_join(row);
        text += '\n';
    }
    {
        std::vector<std::string> row;
        row.reserve(static_cast<std::size_t>(n) + 2);
        row.emplace_back("VALUE_ADDED");
        for (int j = 0; j < n; ++j) row.push_back(format_double(table.value_added(j)));
        row.emplace_back("");
        text += csv_join(row);
        text += '\n';
    }
    write_text_file(path, text);
}

IoTable to_io_table(const EmpiricalTable& table) {
    return IoTable::from_flows(table.flows, table.final_demand);
}

EmpiricalTable from_io_table(const IoTable& table, std::vector<std::string> names) {
    const int n = table.size();
    EmpiricalTable out;
    if (names.empty()) {
        names.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) names.push_back("S" + std::to_string(i + 1));
    }
    if (static_cast<int>(names.size()) != n)
        throw std::invalid_argument("from_io_table: name count does not match table size");
    out.sector_names = std::move(names);
    out.flows = table.a;
    out.final_demand = table.f;
    out.value_added = table.v;
    out.value_added_given = true;
    out.density = compute_density(out.flows);
    return out;
}

} // namespace gvcrand
