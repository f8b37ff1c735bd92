// orba: ordered Banach space integration toolkit, command-line harness.
#include "orba/convolution.hpp"
#include "orba/errors.hpp"
#include "orba/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw orba::ArgumentError("cannot open '" + path + "'");
    json j;
    in >> j;
    return j;
}

// Reports are written to a temporary file and renamed so readers never see
// a partial document.
void write_atomically(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw orba::ArgumentError("cannot write '" + tmp + "'");
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw orba::ArgumentError("cannot rename report into '" + path + "'");
}

void emit(const json& document, const std::string& out_path, bool csv) {
    const std::string body = document.dump(2) + "\n";
    if (out_path.empty())
        std::cout << body;
    else
        write_atomically(out_path, body);
    if (csv) {
        std::string tables;
        if (document.is_array()) {
            for (const auto& report : document) tables += orba::report_table_csv(report);
        } else {
            tables = orba::report_table_csv(document);
        }
        if (!tables.empty()) {
            if (out_path.empty())
                std::cout << tables;
            else
                write_atomically(out_path + ".csv", tables);
        }
    }
}

orba::RunOptions options_from_flags(std::uint64_t seed, bool seed_set, double tol_lp,
                                    double tol_num) {
    orba::RunOptions opts;
    opts.tol_lp = tol_lp;
    opts.tol_num = tol_num;
    if (seed_set) {
        opts.default_seed = seed;
    } else if (const char* env = std::getenv("ORBA_SEED")) {
        opts.default_seed = std::strtoull(env, nullptr, 10);
    }
    return opts;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ordered Banach space integration toolkit"};
    app.require_subcommand(1);

    std::string out_path;
    bool csv = false;
    std::uint64_t seed = 42;
    bool seed_set = false;
    double tol_lp = 1e-9, tol_num = 1e-8;
    int jobs = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the report to this path (atomic)");
        cmd->add_flag("--csv", csv, "also emit CSV for tabular outputs");
        cmd->add_option("--seed", seed, "seed for randomized scans")
            ->each([&](const std::string&) { seed_set = true; });
        cmd->add_option("--tol-lp", tol_lp, "LP tolerance");
        cmd->add_option("--tol-num", tol_num, "numeric comparison tolerance");
    };

    auto* run_cmd = app.add_subcommand("run", "run scenario files");
    std::vector<std::string> scenario_files;
    run_cmd->add_option("scenarios", scenario_files, "scenario JSON files");
    run_cmd->add_option("--jobs", jobs, "run scenarios in parallel")->check(CLI::Range(1, 64));
    add_common(run_cmd);

    auto* reproduce_cmd = app.add_subcommand("reproduce", "run a bundled fixture");
    std::string fixture_id;
    reproduce_cmd->add_option("id", fixture_id, "fixture id")->required();
    add_common(reproduce_cmd);

    app.add_subcommand("list-examples", "list bundled fixture ids");

    auto* schema_cmd = app.add_subcommand("schema", "print the scenario schema");
    schema_cmd->add_option("--out", out_path, "write the schema to this path");

    auto* convolve_cmd = app.add_subcommand("convolve", "convolve a measure with a function");
    std::string group_name = "z";
    int window = 0;
    std::string mu_path, f_path;
    bool check_integral = false;
    convolve_cmd->add_option("--group", group_name, "\"z\" or \"z<N>\"");
    convolve_cmd->add_option("--window", window, "window half-width for the integer group");
    convolve_cmd->add_option("--mu", mu_path, "measure JSON file")->required();
    convolve_cmd->add_option("--f", f_path, "function JSON file")->required();
    convolve_cmd->add_flag("--check-integral", check_integral,
                           "also integrate through the cover and compare");
    add_common(convolve_cmd);

    CLI11_PARSE(app, argc, argv);

    const orba::RunOptions opts = options_from_flags(seed, seed_set, tol_lp, tol_num);

    try {
        if (run_cmd->parsed()) {
            json reports = json::array();
            bool all_passed = true;
            if (jobs <= 1 || scenario_files.size() <= 1) {
                for (const auto& path : scenario_files)
                    reports.push_back(orba::run_scenario(load_json_file(path), opts));
            } else {
                std::vector<std::future<json>> futures;
                futures.reserve(scenario_files.size());
                for (const auto& path : scenario_files)
                    futures.push_back(std::async(std::launch::async, [&, path] {
                        return orba::run_scenario(load_json_file(path), opts);
                    }));
                for (auto& f : futures) reports.push_back(f.get());
            }
            for (const auto& r : reports) all_passed = all_passed && orba::report_passed(r);
            emit(reports, out_path, csv);
            return all_passed ? kExitOk : kExitCheckFailed;
        }
        if (reproduce_cmd->parsed()) {
            const json report = orba::reproduce(fixture_id, opts);
            emit(report, out_path, csv);
            return orba::report_passed(report) ? kExitOk : kExitCheckFailed;
        }
        if (app.get_subcommand("list-examples")->parsed()) {
            json listing = json::array();
            for (const auto& id : orba::reproduce_ids())
                listing.push_back({{"id", id}, {"description", orba::reproduce_description(id)}});
            std::cout << listing.dump(2) << "\n";
            return kExitOk;
        }
        if (schema_cmd->parsed()) {
            emit(orba::scenario_schema(), out_path, false);
            return kExitOk;
        }
        if (convolve_cmd->parsed()) {
            json scenario;
            scenario["name"] = "convolve";
            scenario["operation"] = "convolve";
            scenario["group"] = group_name;
            if (window > 0) scenario["window"] = window;
            scenario["mu"] = load_json_file(mu_path);
            scenario["f"] = load_json_file(f_path);
            scenario["check_integral"] = check_integral;
            const json report = orba::run_scenario(scenario, opts);
            emit(report, out_path, csv);
            return orba::report_passed(report) ? kExitOk : kExitCheckFailed;
        }
    } catch (const orba::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const json::exception& e) {
        std::cerr << "error: invalid JSON input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const orba::Error& e) {
        std::cout << json{{"error", {{"type", "operation"}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        return kExitCheckFailed;
    }
    return kExitBadInput;
}
