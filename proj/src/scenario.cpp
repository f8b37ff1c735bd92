#include "orba/scenario.hpp"

#include "orba/bochner.hpp"
#include "orba/cone_analysis.hpp"
#include "orba/convolution.hpp"
#include "orba/covers.hpp"
#include "orba/errors.hpp"
#include "orba/measure.hpp"
#include "orba/space.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>

namespace orba {

namespace {

using nlohmann::json;

Group group_from_json(const json& j) {
    const std::string name = j.at("group").get<std::string>();
    if (name == "z") return Group::integers(j.at("window").get<int>());
    if (name.size() > 1 && name.front() == 'z') {
        const int n = std::stoi(name.substr(1));
        return Group::finite(FiniteGroup::cyclic(n));
    }
    throw ArgumentError("unknown group '" + name + "' (use \"z\" or \"z<N>\")");
}

json checks_against(const json& scenario, const json& outputs, double tol_num) {
    json results = json::array();
    if (!scenario.contains("checks")) return results;
    int index = 0;
    for (const auto& check : scenario.at("checks")) {
        const std::string kind = check.at("kind").get<std::string>();
        const std::string name =
            check.value("name", kind + "#" + std::to_string(index++));
        bool pass = false;
        std::string detail;
        auto field_of = [&](const char* fallback) {
            return check.value("field", std::string(fallback));
        };
        if (kind == "value_equals" || kind == "field_equals") {
            const std::string field = field_of("value");
            const double got = outputs.at(field).get<double>();
            const double expected = check.at("expected").get<double>();
            const double tol = check.value("tol", tol_num);
            pass = std::fabs(got - expected) <= tol;
            detail = "got " + std::to_string(got) + ", expected " + std::to_string(expected);
        } else if (kind == "value_leq" || kind == "field_leq") {
            const std::string field = field_of("value");
            const double got = outputs.at(field).get<double>();
            const double bound = check.at("bound").get<double>();
            pass = got <= bound;
            detail = "got " + std::to_string(got) + ", bound " + std::to_string(bound);
        } else if (kind == "value_geq" || kind == "field_geq") {
            const std::string field = field_of("value");
            const double got = outputs.at(field).get<double>();
            const double bound = check.at("bound").get<double>();
            pass = got >= bound;
            detail = "got " + std::to_string(got) + ", bound " + std::to_string(bound);
        } else if (kind == "vector_equals") {
            const std::string field = field_of("vector");
            const Vec got = outputs.at(field).get<Vec>();
            const Vec expected = check.at("expected").get<Vec>();
            const double tol = check.value("tol", tol_num);
            pass = got.size() == expected.size() && linf_norm(sub(got, expected)) <= tol;
            detail = "max deviation " +
                     std::to_string(got.size() == expected.size()
                                        ? linf_norm(sub(got, expected))
                                        : -1.0);
        } else if (kind == "bool_true" || kind == "bool_false") {
            const std::string field = field_of("result");
            const bool got = outputs.at(field).get<bool>();
            pass = kind == "bool_true" ? got : !got;
            detail = got ? "true" : "false";
        } else {
            throw ArgumentError("unknown check kind '" + kind + "'");
        }
        results.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    }
    return results;
}

json execute_operation(const json& s, std::uint64_t seed, double tol_lp, double tol_num,
                       json& residuals) {
    const std::string op = s.at("operation").get<std::string>();
    SpaceOptions space_opts;
    space_opts.tol_lp = tol_lp;
    json out;

    if (op == "cone_contains") {
        auto space = space_from_json(s.at("space"), space_opts);
        out["result"] = cone_contains(*space, make_vector(*space, s.at("vector").get<Vec>()));
    } else if (op == "leq") {
        auto space = space_from_json(s.at("space"), space_opts);
        out["result"] = leq(*space, make_vector(*space, s.at("x").get<Vec>()),
                            make_vector(*space, s.at("y").get<Vec>()));
    } else if (op == "norm") {
        auto space = space_from_json(s.at("space"), space_opts);
        out["value"] = norm(*space, make_vector(*space, s.at("vector").get<Vec>()));
    } else if (op == "dual_generators") {
        auto space = space_from_json(s.at("space"), space_opts);
        json gens = json::array();
        for (const Vec& g : dual_generators(*space)) gens.push_back(g);
        out["generators"] = std::move(gens);
    } else if (op == "min_dominator" || op == "n_norm") {
        auto space = space_from_json(s.at("space"), space_opts);
        const DominatorResult dom =
            min_dominator(*space, make_vector(*space, s.at("vector").get<Vec>()));
        out["value"] = dom.value;
        out["dominator"] = dom.a.coords;
        residuals["lp"] = dom.residual;
    } else if (op == "scan") {
        auto space = space_from_json(s.at("space"), space_opts);
        ScanOptions opts;
        opts.samples = s.value("samples", 100);
        opts.seed = seed;
        opts.tol_num = tol_num;
        if (s.contains("probes"))
            for (const auto& p : s.at("probes")) opts.extra_probes.push_back(p.get<Vec>());
        const DominatingScan dom = dominating_ratio_scan(*space, opts);
        const NormalityScan nrm = normality_ratio_scan(*space, opts);
        out = scan_report_json(*space, dom, nrm);
        out["C_lower"] = dom.c_lower; // also exposed for checks
        out["normality_ratio"] = nrm.ratio;
    } else if (op == "renorm_scan") {
        auto space = space_from_json(s.at("space"), space_opts);
        const double epsilon = s.at("epsilon").get<double>();
        RenormOptions ropts;
        ropts.seed = seed;
        const RenormedSpace renormed = renorm_eps(space, epsilon, ropts);
        ScanOptions opts;
        opts.samples = s.value("samples", 100);
        opts.seed = seed;
        opts.tol_num = tol_num;
        const DominatingScan scan = renormed.dominating_ratio_scan(opts);
        out["value"] = scan.c_lower;
        out["epsilon"] = epsilon;
        out["bound"] = (1.0 + epsilon) * (1.0 + epsilon);
        out["equivalence_constant"] = renormed.sampled_equivalence_constant();
    } else if (op == "phi_integral" || op == "bochner_integral") {
        auto space = space_from_json(s.at("space"), space_opts);
        const IntegrableFunction f = function_from_json(s.at("function"), *space);
        if (op == "phi_integral") {
            out["vector"] = phi_integral(*space, f).coords;
        } else {
            const BochnerResult r = bochner_integral(*space, f);
            out["vector"] = r.value.coords;
            out["error_bound"] = r.error_bound;
        }
        const L1Norm l1 = l1_norm(*space, f);
        out["l1_norm"] = l1.value;
        out["l1_uncertainty"] = l1.uncertainty;
    } else if (op == "ae_leq") {
        auto space = space_from_json(s.at("space"), space_opts);
        const IntegrableFunction f = function_from_json(s.at("f"), *space);
        const IntegrableFunction g = function_from_json(s.at("g"), *space);
        out["result"] = ae_leq(*space, f, g);
    } else if (op == "pettis_check") {
        auto space = space_from_json(s.at("space"), space_opts);
        const IntegrableFunction f = function_from_json(s.at("function"), *space);
        out["result"] = pettis_check(*space, f, tol_num);
        out["vector"] = bochner_integral(*space, f).value.coords;
    } else if (op == "pushforward") {
        auto source = space_from_json(s.at("source"), space_opts);
        auto target = space_from_json(s.at("target"), space_opts);
        const Mat map = mat_from_json(s.at("map"));
        const IntegrableFunction f = function_from_json(s.at("function"), *source);
        const BochnerResult r = pushforward_integrate(map, *source, *target, f, tol_num);
        out["vector"] = r.value.coords;
    } else if (op == "u_integral") {
        Cover cover = Cover::from_json(s.at("cover"));
        const MeasureSpace mu = measure_from_json(s.at("measure"));
        std::vector<Vec> values;
        for (const auto& v : s.at("values")) values.push_back(v.get<Vec>());
        const Cover::UIntegral r = cover.u_integral(mu, values);
        out["vector"] = r.result.value.coords;
        out["member"] = r.member;
        out["max_deviation"] = r.max_deviation;
        out["transcript"] = r.transcript;
        residuals["cover_consistency"] = r.max_deviation;
    } else if (op == "koethe_norm") {
        const MeasureSpace nu = measure_from_json(s.at("nu"));
        out["value"] = koethe_norm(s.at("weight").get<Vec>(), nu, s.at("f").get<Vec>());
    } else if (op == "merged_norm") {
        const MeasureSpace nu = measure_from_json(s.at("nu"));
        const Vec w1 = s.at("w1").get<Vec>();
        const Vec w2 = s.at("w2").get<Vec>();
        const Vec f = s.at("f").get<Vec>();
        const double closed = merged_norm(w1, w2, nu, f);
        const double grid = merged_norm_grid(w1, w2, nu, f, s.value("grid_step", 1e-3));
        out["value"] = closed;
        out["grid_value"] = grid;
        out["deviation"] = std::fabs(closed - grid);
        residuals["grid_vs_closed"] = std::fabs(closed - grid);
    } else if (op == "principal_ideal_norm") {
        out["value"] = principal_ideal_norm(s.at("unit").get<Vec>(), s.at("f").get<Vec>());
    } else if (op == "convolve") {
        const Group g = group_from_json(s);
        const GroupFunction f = group_function_from_json(g, s.at("f"));
        const GroupMeasure mu = group_measure_from_json(s.at("mu"));
        if (s.value("check_integral", false)) {
            const ConvolveCheck check = convolve_via_integral(g, mu, f, tol_num);
            out["values"] = check.result.values;
            out["max_deviation"] = check.max_deviation;
            out["transcript"] = check.transcript;
            residuals["integral_vs_direct"] = check.max_deviation;
        } else {
            out["values"] = convolve_direct(g, mu, f).values;
        }
    } else {
        throw ArgumentError("unknown operation '" + op + "'");
    }
    return out;
}

json fixture_report(const std::string& id, const std::string& description) {
    json report;
    report["schema_version"] = kReportSchemaVersion;
    report["fixture"] = id;
    report["description"] = description;
    report["checks"] = json::array();
    return report;
}

void add_check(json& report, const std::string& name, bool pass, const std::string& detail) {
    report["checks"].push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
}

void finalize(json& report) {
    bool all = true;
    for (const auto& c : report["checks"]) all = all && c.at("pass").get<bool>();
    report["all_passed"] = all;
}

// Lower-triangular all-ones transform: coordinates map to partial sums.
SpacePtr partial_sum_space(int n, double tol_lp = 1e-9) {
    Mat t(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) t.at(i, j) = 1.0;
    SpaceOptions opts;
    opts.tol_lp = tol_lp;
    return OrderedSpace::make("partial-sum-" + std::to_string(n),
                              ConeSpec::transformed_orthant(std::move(t)),
                              NormSpec::weighted_l1(Vec(n, 1.0)), opts);
}

Vec alternating_vector(int n) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = i % 2 == 0 ? 1.0 : -1.0;
    return x;
}

json reproduce_a11(const RunOptions& opts) {
    json report = fixture_report(
        "a11", "alternating vectors under the partial-sum order: unit dominator, growing base norm");
    json table = json::array();
    for (int n : {2, 4, 8, 16}) {
        auto space = partial_sum_space(n, opts.tol_lp);
        Vec a_coords(n, 0.0);
        a_coords[0] = 1.0;
        const Vector a = make_vector(*space, a_coords);
        const Vector x = make_vector(*space, alternating_vector(n));
        const Vector minus_a = make_vector(*space, scale(-1.0, a_coords));

        const bool sandwich = leq(*space, minus_a, x) && leq(*space, x, a);
        const double norm_x = norm(*space, x);
        const double norm_a = norm(*space, a);
        const double n_x = n_norm(*space, x);
        const double ratio = norm_x / n_x;

        add_check(report, "order sandwich n=" + std::to_string(n), sandwich,
                  sandwich ? "-a <= x <= a" : "violated");
        add_check(report, "base norm n=" + std::to_string(n), norm_x == double(n),
                  "||x|| = " + std::to_string(norm_x));
        add_check(report, "unit norm n=" + std::to_string(n), norm_a == 1.0,
                  "||a|| = " + std::to_string(norm_a));
        add_check(report, "N-norm n=" + std::to_string(n), std::fabs(n_x - 1.0) <= 1e-9,
                  "N(x) = " + std::to_string(n_x));
        add_check(report, "normality ratio n=" + std::to_string(n),
                  std::fabs(ratio - n) <= 1e-6, "ratio = " + std::to_string(ratio));
        table.push_back({{"n", n},
                         {"norm_x", norm_x},
                         {"n_norm_x", n_x},
                         {"normality_ratio", ratio}});
    }
    report["table"] = std::move(table);
    report["table_columns"] = {"n", "norm_x", "n_norm_x", "normality_ratio"};
    finalize(report);
    return report;
}

json reproduce_sum_norm(const RunOptions& opts) {
    json report = fixture_report(
        "sum-norm", "two coordinate lines summed to the l1 plane; inclusion and domination bounds");
    SpaceOptions sopts;
    sopts.tol_lp = opts.tol_lp;
    auto line1 = OrderedSpace::make("line-x", ConeSpec::orthant(1),
                                    NormSpec::weighted_l1({1.0}), sopts);
    auto line2 = OrderedSpace::make("line-y", ConeSpec::orthant(1),
                                    NormSpec::weighted_l1({1.0}), sopts);
    Mat e1(2, 1), e2(2, 1);
    e1.at(0, 0) = 1.0;
    e2.at(1, 0) = 1.0;
    auto sum = sum_space("plane", line1, line2, e1, e2);

    json table = json::array();
    Sampler rng(opts.default_seed);
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const Vec z{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const double got = norm(*sum, make_vector(*sum, z));
        const double expected = std::fabs(z[0]) + std::fabs(z[1]);
        worst = std::max(worst, std::fabs(got - expected));
    }
    add_check(report, "sum norm equals l1 on samples", worst <= opts.tol_num,
              "max deviation " + std::to_string(worst));
    table.push_back({{"samples", 25}, {"max_norm_deviation", worst}});

    ScanOptions scan_opts;
    scan_opts.samples = 100;
    scan_opts.seed = opts.default_seed;
    const DominatingScan scan = dominating_ratio_scan(*sum, scan_opts);
    add_check(report, "dominating ratio of the sum stays 1", scan.c_lower <= 1.0 + 1e-6,
              "C_lower = " + std::to_string(scan.c_lower));
    table.push_back({{"samples", scan.samples}, {"C_lower", scan.c_lower}});
    report["table"] = std::move(table);
    finalize(report);
    return report;
}

json reproduce_koethe_cover(const RunOptions& opts) {
    json report = fixture_report(
        "koethe-cover", "weighted-L1 member assignment from the summable reference and cover consistency");
    const MeasureSpace nu = MeasureSpace::finite({{"y0", 1.0}, {"y1", 1.0}, {"y2", 1.0}});
    Cover cover = Cover::koethe_weights(nu, {}, {1.0, 0.5, 0.25});
    const Vec f{0.0, 3.0, 0.0};
    const std::string member = cover.assign_member({f});
    const Vec w = cover.member_data(member);
    const Vec expected_w{1.0, 0.125, 0.25};
    add_check(report, "assigned weight",
              linf_norm(sub(w, expected_w)) <= opts.tol_num,
              "w = [" + std::to_string(w[0]) + ", " + std::to_string(w[1]) + ", " +
                  std::to_string(w[2]) + "]");
    const double rho = koethe_norm(w, nu, f);
    add_check(report, "member norm of f", std::fabs(rho - 0.375) <= opts.tol_num,
              "rho_w(f) = " + std::to_string(rho));

    const MeasureSpace mu = MeasureSpace::finite({{"x0", 1.0}});
    const Cover::UIntegral integral = cover.u_integral(mu, {f});
    add_check(report, "cover-consistent integral",
              integral.max_deviation <= opts.tol_lp &&
                  linf_norm(sub(integral.result.value.coords, f)) <= opts.tol_num,
              "deviation " + std::to_string(integral.max_deviation));
    report["table"] = json::array({{{"weight", w}, {"rho_w_f", rho}}});
    finalize(report);
    return report;
}

json reproduce_convolution_z(const RunOptions& opts) {
    json report = fixture_report(
        "convolution-z", "integral route equals the direct convolution on the integer window");
    const int window = 64;
    const Group g = Group::integers(window);
    const int range = window + 8;
    Vec values(2 * range + 1);
    for (int n = -range; n <= range; ++n) values[n + range] = double(n);
    const GroupFunction f = make_integer_function(range, values, Growth{1.0, 1});
    const GroupMeasure mu{{{0, 0.5}, {1, 0.5}}};

    const ConvolveCheck check = convolve_via_integral(g, mu, f, opts.tol_num);
    double worst = 0.0;
    for (int y = -window; y <= window; ++y)
        worst = std::max(worst, std::fabs(check.result.values[y + window] - (y - 0.5)));
    add_check(report, "expected pointwise values", worst <= 1e-12,
              "max |result - (y - 1/2)| = " + std::to_string(worst));
    add_check(report, "integral route matches direct", check.max_deviation <= 1e-12,
              "max deviation " + std::to_string(check.max_deviation));
    report["table"] = json::array(
        {{{"window", window}, {"max_deviation", check.max_deviation}, {"max_error", worst}}});
    finalize(report);
    return report;
}

json reproduce_renorm(const RunOptions& opts) {
    json report = fixture_report(
        "renorm", "dominating ratio under rho = eps*N + base stays within (1+eps)^2");
    auto space = partial_sum_space(4, opts.tol_lp);
    json table = json::array();
    for (double eps : {0.1, 0.5, 1.0}) {
        RenormOptions ropts;
        ropts.seed = opts.default_seed;
        const RenormedSpace renormed = renorm_eps(space, eps, ropts);
        ScanOptions scan_opts;
        scan_opts.samples = 200;
        scan_opts.seed = opts.default_seed;
        const DominatingScan scan = renormed.dominating_ratio_scan(scan_opts);
        const double bound = (1.0 + eps) * (1.0 + eps);
        add_check(report, "rho ratio for eps=" + std::to_string(eps),
                  scan.c_lower <= bound + 1e-6,
                  "ratio " + std::to_string(scan.c_lower) + " <= " + std::to_string(bound));
        table.push_back({{"epsilon", eps}, {"rho_ratio", scan.c_lower}, {"bound", bound}});
    }
    report["table"] = std::move(table);
    report["table_columns"] = {"epsilon", "rho_ratio", "bound"};
    finalize(report);
    return report;
}

} // namespace

json run_scenario(const json& scenario, const RunOptions& opts) {
    if (!scenario.is_object()) throw ArgumentError("scenario must be a JSON object");
    if (!scenario.contains("operation"))
        throw ArgumentError("scenario is missing the 'operation' field");

    const auto start = std::chrono::steady_clock::now();
    json report;
    report["schema_version"] = kReportSchemaVersion;
    report["name"] = scenario.value("name", std::string("unnamed"));
    report["operation"] = scenario.at("operation");
    const std::uint64_t seed = scenario.value("seed", opts.default_seed);
    report["seed"] = seed;
    report["inputs"] = scenario;

    double tol_lp = opts.tol_lp;
    double tol_num = opts.tol_num;
    if (scenario.contains("tolerances")) {
        tol_lp = scenario.at("tolerances").value("lp", tol_lp);
        tol_num = scenario.at("tolerances").value("num", tol_num);
    }

    json residuals = json::object();
    try {
        const json outputs = execute_operation(scenario, seed, tol_lp, tol_num, residuals);
        report["outputs"] = outputs;
        report["residuals"] = residuals;
        report["checks"] = checks_against(scenario, outputs, tol_num);
    } catch (const ArgumentError&) {
        throw; // schema-level problem: the caller exits with code 2
    } catch (const Error& e) {
        report["error"] = {{"type", "operation"}, {"message", e.what()}};
        report["checks"] = json::array();
    }
    bool all = !report.contains("error");
    for (const auto& c : report["checks"]) all = all && c.at("pass").get<bool>();
    report["all_passed"] = all;
    report["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

bool report_passed(const json& report) { return report.value("all_passed", false); }

std::vector<std::string> reproduce_ids() {
    return {"a11", "sum-norm", "koethe-cover", "convolution-z", "renorm"};
}

std::string reproduce_description(const std::string& id) {
    if (id == "a11")
        return "alternating partial-sum family: unit dominator against linearly growing base norm";
    if (id == "sum-norm") return "coordinate-line sum space: decomposition norm and domination";
    if (id == "koethe-cover") return "weighted-L1 cover assignment and consistency";
    if (id == "convolution-z") return "convolution on the integer window, two routes";
    if (id == "renorm") return "epsilon-renorming dominating-ratio bound";
    throw ArgumentError("unknown fixture id '" + id + "'");
}

json reproduce(const std::string& id, const RunOptions& opts) {
    if (id == "a11") return reproduce_a11(opts);
    if (id == "sum-norm") return reproduce_sum_norm(opts);
    if (id == "koethe-cover") return reproduce_koethe_cover(opts);
    if (id == "convolution-z") return reproduce_convolution_z(opts);
    if (id == "renorm") return reproduce_renorm(opts);
    throw ArgumentError("unknown fixture id '" + id + "'");
}

json scenario_schema() {
    return json{
        {"schema_version", kReportSchemaVersion},
        {"scenario",
         {{"name", "string (optional)"},
          {"operation",
           "one of: cone_contains | leq | norm | dual_generators | min_dominator | n_norm | "
           "scan | renorm_scan | phi_integral | bochner_integral | ae_leq | pettis_check | "
           "pushforward | u_integral | koethe_norm | merged_norm | principal_ideal_norm | "
           "convolve"},
          {"seed", "integer (optional; default 42 or ORBA_SEED)"},
          {"tolerances", {{"lp", "double"}, {"num", "double"}}},
          {"space", "space descriptor: {id, dim, cone, norm}"},
          {"vector", "array of doubles (norm/min_dominator/cone_contains)"},
          {"x", "array (leq)"},
          {"y", "array (leq)"},
          {"samples", "integer (scan/renorm_scan)"},
          {"probes", "array of vectors (scan, optional)"},
          {"epsilon", "double (renorm_scan)"},
          {"function", "integrable function: {measure, carrier, values}"},
          {"source", "space descriptor (pushforward)"},
          {"target", "space descriptor (pushforward)"},
          {"map", "matrix (pushforward)"},
          {"cover", "cover manifest: {kind, members, ...}"},
          {"measure", "measure descriptor (u_integral)"},
          {"values", "array of vectors (u_integral)"},
          {"nu", "measure descriptor (koethe_norm/merged_norm)"},
          {"weight", "array (koethe_norm)"},
          {"w1", "array (merged_norm)"},
          {"w2", "array (merged_norm)"},
          {"f", "array (koethe_norm/merged_norm/principal_ideal_norm) or group function (convolve)"},
          {"unit", "array (principal_ideal_norm)"},
          {"group", "\"z\" or \"z<N>\" (convolve)"},
          {"window", "integer (convolve on z)"},
          {"mu", "group measure: {support: [{x, mass}]}"},
          {"check_integral", "bool (convolve)"},
          {"checks",
           "array of {kind: value_equals|value_leq|value_geq|vector_equals|bool_true|bool_false|"
           "field_equals|field_leq|field_geq, field?, expected?, bound?, tol?, name?}"}}},
        {"report",
         {{"schema_version", kReportSchemaVersion},
          {"fields",
           "name, operation, seed, inputs, outputs, residuals, checks[], all_passed, "
           "wall_time_ms; operation errors appear under 'error' with exit code 1"}}}};
}

std::string report_table_csv(const json& report) {
    if (!report.contains("table") || report["table"].empty()) return "";
    const json& table = report["table"];
    std::vector<std::string> columns;
    if (report.contains("table_columns")) {
        for (const auto& c : report["table_columns"]) columns.push_back(c.get<std::string>());
    } else {
        for (const auto& [key, value] : table.front().items()) {
            (void)value;
            columns.push_back(key);
        }
    }
    std::ostringstream csv;
    for (std::size_t i = 0; i < columns.size(); ++i)
        csv << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : table) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const json& cell = row.contains(columns[i]) ? row.at(columns[i]) : json();
            if (cell.is_number())
                csv << cell.get<double>();
            else if (!cell.is_null())
                csv << cell.dump();
            csv << (i + 1 < columns.size() ? "," : "\n");
        }
    }
    return csv.str();
}

} // namespace orba
