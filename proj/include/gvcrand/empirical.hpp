#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gvcrand/model.hpp"

namespace gvcrand {

// A single-country I-O table read from (or written to) the documented CSV
// layout:
//
//   sector,<name_1>,...,<name_N>,FINAL_DEMAND
//   <name_1>,a_11,...,a_1N,F_1
//   ...
//   <name_N>,a_N1,...,a_NN,F_N
//   VALUE_ADDED,v_1,...,v_N,          (row optional)
struct EmpiricalTable {
    std::vector<std::string> sector_names;
    Eigen::MatrixXd flows;
    Eigen::VectorXd final_demand;
    Eigen::VectorXd value_added;
    bool value_added_given = false;
    double density = 0.0;  // nonzero fraction of the flow block

    int size() const { return static_cast<int>(sector_names.size()); }
};

// Parses and validates; throws std::runtime_error with a per-row report when
// the accounting identities are violated beyond identity_rel_tol, or naming
// the offending cell for dimension/sign errors.
EmpiricalTable ingest_table(const std::filesystem::path& path, double identity_rel_tol = 1e-6);

void write_table(const EmpiricalTable& table, const std::filesystem::path& path);

// Bridges to the measure pipeline (recomputes y, v from the identities).
IoTable to_io_table(const EmpiricalTable& table);

EmpiricalTable from_io_table(const IoTable& table, std::vector<std::string> names = {});

} // namespace gvcrand
