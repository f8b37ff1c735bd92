#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace orba {

inline constexpr int kReportSchemaVersion = 1;

struct RunOptions {
    std::uint64_t default_seed = 42;
    double tol_lp = 1e-9;
    double tol_num = 1e-8;
};

/// Executes one scenario document and returns its report. Schema errors
/// throw ArgumentError; operation errors are captured in the report with
/// "error" set.
nlohmann::json run_scenario(const nlohmann::json& scenario, const RunOptions& opts = {});

/// True when every check in the report passed and no error occurred.
bool report_passed(const nlohmann::json& report);

/// Bundled fixtures: a11, sum-norm, koethe-cover, convolution-z, renorm.
std::vector<std::string> reproduce_ids();
std::string reproduce_description(const std::string& id);

/// Runs a bundled fixture; the report carries comparison tables and
/// pass/fail flags. Unknown ids throw ArgumentError.
nlohmann::json reproduce(const std::string& id, const RunOptions& opts = {});

/// JSON description of the scenario schema (for the `schema` subcommand).
nlohmann::json scenario_schema();

/// CSV rendering of a report's "table" field; empty when there is none.
std::string report_table_csv(const nlohmann::json& report);

} // namespace orba
