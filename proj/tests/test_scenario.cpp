#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orba/errors.hpp"
#include "orba/scenario.hpp"

#include <json.hpp>

using namespace orba;
using nlohmann::json;

namespace {

json lattice_space_json() {
    return json{{"id", "plane"},
                {"dim", 2},
                {"cone", {{"kind", "orthant"}, {"dim", 2}}},
                {"norm", {{"kind", "weighted_l1"}, {"weights", {1.0, 1.0}}}}};
}

} // namespace

TEST_CASE("norm scenario with passing checks") {
    json scenario{{"name", "norm-check"},
                  {"operation", "norm"},
                  {"space", lattice_space_json()},
                  {"vector", {1.0, -2.0}},
                  {"checks", json::array({{{"kind", "value_equals"}, {"expected", 3.0}}})}};
    const json report = run_scenario(scenario);
    CHECK(report_passed(report));
    CHECK(report.at("schema_version") == kReportSchemaVersion);
    CHECK(report.at("name") == "norm-check");
    CHECK(report.at("seed") == 42);
    CHECK(report.at("outputs").at("value") == doctest::Approx(3.0));
    CHECK(report.at("wall_time_ms").get<double>() >= 0.0);
    CHECK(report.at("inputs") == scenario);
}

TEST_CASE("failing check flips the exit state without an error") {
    json scenario{{"operation", "norm"},
                  {"space", lattice_space_json()},
                  {"vector", {1.0, -2.0}},
                  {"checks", json::array({{{"kind", "value_equals"}, {"expected", 5.0}}})}};
    const json report = run_scenario(scenario);
    CHECK_FALSE(report_passed(report));
    CHECK_FALSE(report.contains("error"));
    CHECK_FALSE(report.at("checks")[0].at("pass").get<bool>());
}

TEST_CASE("operation errors are captured in the report") {
    json scenario{{"operation", "norm"},
                  {"space", lattice_space_json()},
                  {"vector", {1.0, -2.0, 3.0}}}; // wrong length
    const json report = run_scenario(scenario);
    CHECK_FALSE(report_passed(report));
    CHECK(report.at("error").at("type") == "operation");
}

TEST_CASE("schema violations throw out of the runner") {
    CHECK_THROWS_AS((void)run_scenario(json{{"name", "no-op"}}), ArgumentError);
    CHECK_THROWS_AS((void)run_scenario(json{{"operation", "not-a-thing"}}), ArgumentError);
    CHECK_THROWS_AS((void)run_scenario(json::array()), ArgumentError);
}

TEST_CASE("seed resolution order: scenario, then options") {
    RunOptions opts;
    opts.default_seed = 7;
    json scenario{{"operation", "scan"},
                  {"samples", 5},
                  {"space", lattice_space_json()}};
    CHECK(run_scenario(scenario, opts).at("seed") == 7);
    scenario["seed"] = 123;
    CHECK(run_scenario(scenario, opts).at("seed") == 123);
}

TEST_CASE("scan scenario carries the report fields") {
    json scenario{{"operation", "scan"},
                  {"samples", 10},
                  {"space", lattice_space_json()},
                  {"checks",
                   json::array({{{"kind", "field_leq"}, {"field", "C_lower"}, {"bound", 1.1}},
                                {{"kind", "field_geq"},
                                 {"field", "normality_ratio"},
                                 {"bound", 0.9}}})}};
    const json report = run_scenario(scenario);
    CHECK(report_passed(report));
    CHECK(report.at("outputs").contains("witness"));
}

TEST_CASE("u_integral scenario records the consistency residual") {
    json scenario{
        {"operation", "u_integral"},
        {"cover", {{"kind", "principal_ideals"}, {"ambient_dim", 2}, {"members", json::array()}}},
        {"measure", {{"atoms", json::array({{{"label", "p"}, {"weight", 2.0}}})}}},
        {"values", json::array({{1.0, 0.5}})},
        {"checks",
         json::array({{{"kind", "vector_equals"}, {"expected", {2.0, 1.0}}, {"tol", 1e-9}},
                      {{"kind", "field_leq"}, {"field", "max_deviation"}, {"bound", 1e-9}}})}};
    const json report = run_scenario(scenario);
    CHECK(report_passed(report));
    CHECK(report.at("residuals").contains("cover_consistency"));
}

TEST_CASE("bundled fixtures all pass") {
    for (const auto& id : reproduce_ids()) {
        CAPTURE(id);
        const json report = reproduce(id);
        CHECK(report_passed(report));
        CHECK(report.at("fixture") == id);
    }
    CHECK_THROWS_AS((void)reproduce("nope"), ArgumentError);
    CHECK_THROWS_AS((void)reproduce_description("nope"), ArgumentError);
}

TEST_CASE("schema document lists every operation") {
    const json schema = scenario_schema();
    const std::string ops = schema.at("scenario").at("operation").get<std::string>();
    for (const char* op : {"norm", "min_dominator", "scan", "renorm_scan", "phi_integral",
                           "bochner_integral", "pushforward", "u_integral", "koethe_norm",
                           "merged_norm", "principal_ideal_norm", "convolve"})
        CHECK(ops.find(op) != std::string::npos);
}

TEST_CASE("CSV rendering of tabular reports") {
    const json report = reproduce("a11");
    const std::string csv = report_table_csv(report);
    CHECK(csv.find("n,norm_x,n_norm_x,normality_ratio") == 0);
    CHECK(csv.find("16") != std::string::npos);
    CHECK(report_table_csv(json{{"name", "no-table"}}).empty());
}

TEST_CASE("pushforward scenario checks the transport identity") {
    json scenario{
        {"operation", "pushforward"},
        {"source", lattice_space_json()},
        {"target", lattice_space_json()},
        {"map", {{1.0, 0.0}, {1.0, 1.0}}},
        {"function",
         {{"measure",
           {{"atoms", json::array({{{"label", "p"}, {"weight", 2.0}},
                                   {{"label", "q"}, {"weight", 0.5}}})}}},
          {"carrier", "plane"},
          {"values", {{1.0, 0.0}, {0.0, 2.0}}}}},
        {"checks", json::array({{{"kind", "vector_equals"}, {"expected", {2.0, 3.0}}}})}};
    const json report = run_scenario(scenario);
    CHECK(report_passed(report));
}
