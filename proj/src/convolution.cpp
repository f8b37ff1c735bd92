#include "orba/convolution.hpp"

#include "orba/covers.hpp"
#include "orba/errors.hpp"
#include "orba/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace orba {

namespace {

constexpr int kAssociativityCap = 24; // exhaustive triple check up to this order

double chain_sup_abs(const GroupFunction& f, int k) {
    // sup |f(K_k)| with K_k = [-k, k]; exact on the stored range, bounded by
    // the growth descriptor beyond it.
    double sup = 0.0;
    const int covered = std::min(k, f.range);
    for (int n = -covered; n <= covered; ++n) sup = std::max(sup, std::fabs(f.at_int(n)));
    if (k > f.range) {
        if (!f.growth)
            throw RangeError("missing growth descriptor for suprema beyond the stored range");
        sup = std::max(sup, f.growth->coeff * std::pow(1.0 + k, f.growth->degree));
    }
    return sup;
}

int chain_index(int x) { return std::max(1, std::abs(x)); }

void validate_integer_function(const GroupFunction& f) {
    if (static_cast<int>(f.values.size()) != 2 * f.range + 1)
        throw ArgumentError("stored values must cover [-range, range]");
    if (f.growth) {
        if (!(f.growth->coeff >= 0.0) || f.growth->degree < 0)
            throw ArgumentError("growth descriptor must have nonnegative parameters");
        for (int n = -f.range; n <= f.range; ++n) {
            const double bound = f.growth->coeff * std::pow(1.0 + std::abs(n), f.growth->degree);
            if (std::fabs(f.at_int(n)) > bound + 1e-12)
                throw ArgumentError("growth descriptor is inconsistent with stored values at " +
                                    std::to_string(n));
        }
    }
}

} // namespace

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n <= 0) throw ArgumentError("cyclic group order must be positive");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return from_table(std::move(table));
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw ArgumentError("empty Cayley table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw ArgumentError("Cayley table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw ArgumentError("Cayley table entry out of range");
    }
    // Identity: e with e*a = a*e = a for all a.
    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) throw ArgumentError("Cayley table has no identity");
    std::vector<int> inverse(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (table[a][b] == identity && table[b][a] == identity) {
                inverse[a] = b;
                break;
            }
        }
        if (inverse[a] < 0) throw ArgumentError("element without inverse in Cayley table");
    }
    if (n <= kAssociativityCap) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table[table[a][b]][c] != table[a][table[b][c]])
                        throw ArgumentError("Cayley table is not associative");
    }
    FiniteGroup g;
    g.table = std::move(table);
    g.identity = identity;
    g.inverse = std::move(inverse);
    return g;
}

Group Group::integers(int window) {
    if (window <= 0) throw ArgumentError("window must be positive");
    return Group(IntegerGroup{window});
}

int Group::carrier_size() const {
    if (is_integer()) return 2 * integers_data().window + 1;
    return finite_data().order();
}

int Group::element_at(int index) const {
    if (is_integer()) return index - integers_data().window;
    return index;
}

int Group::index_of(int element) const {
    if (is_integer()) {
        const int w = integers_data().window;
        if (element < -w || element > w)
            throw RangeError("element outside the window");
        return element + w;
    }
    if (element < 0 || element >= finite_data().order())
        throw RangeError("element index outside the group");
    return element;
}

double GroupFunction::at_int(int n) const {
    if (n < -range || n > range)
        throw RangeError("evaluation at " + std::to_string(n) +
                         " is outside the stored range [-" + std::to_string(range) + ", " +
                         std::to_string(range) + "]");
    return values[n + range];
}

GroupFunction make_integer_function(int range, Vec values, std::optional<Growth> growth) {
    if (range < 0) throw ArgumentError("range must be nonnegative");
    GroupFunction f;
    f.range = range;
    f.values = std::move(values);
    f.growth = growth;
    validate_integer_function(f);
    return f;
}

GroupFunction make_finite_function(const FiniteGroup& g, Vec values) {
    if (static_cast<int>(values.size()) != g.order())
        throw ArgumentError("value count does not match group order");
    GroupFunction f;
    f.values = std::move(values);
    return f;
}

GroupFunction translate(const Group& g, const GroupFunction& f, int x,
                        std::optional<int> out_range) {
    if (!g.is_integer()) {
        const FiniteGroup& fg = g.finite_data();
        if (x < 0 || x >= fg.order()) throw RangeError("translation element outside the group");
        Vec out(fg.order());
        const int xinv = fg.inverse[x];
        for (int y = 0; y < fg.order(); ++y) out[y] = f.values[fg.table[xinv][y]];
        return make_finite_function(fg, std::move(out));
    }
    const int w = out_range.value_or(g.integers_data().window);
    if (f.range < w + std::abs(x))
        throw RangeError("translate by " + std::to_string(x) +
                         " needs values on [-" + std::to_string(w + std::abs(x)) + ", " +
                         std::to_string(w + std::abs(x)) + "]; stored range is " +
                         std::to_string(f.range));
    Vec out(2 * w + 1);
    for (int y = -w; y <= w; ++y) out[y + w] = f.at_int(y - x);
    GroupFunction res;
    res.range = w;
    res.values = std::move(out);
    return res;
}

double WeightFunctions::u_at(const Group& g, int x) const { return u[g.index_of(x)]; }

WeightFunctions weight_builder(const Group& g, const GroupFunction& f) {
    WeightFunctions out;
    if (g.is_integer()) {
        const int w = g.integers_data().window;
        // alpha_n = n * (1 + sup |f(K_{n+1})|), needed for n = 1 .. w+1.
        Vec alpha(w + 2, 0.0);
        for (int n = 1; n <= w + 1; ++n) alpha[n] = n * (1.0 + chain_sup_abs(f, n + 1));

        Vec wv(2 * w + 1, 0.0), uv(2 * w + 1, 0.0), vv(2 * w + 1, 0.0);
        for (int x = -w; x <= w; ++x) {
            const int idx = x + w;
            const int cx = chain_index(x);
            uv[idx] = 1.0 + chain_sup_abs(f, cx + 1);
            vv[idx] = cx * uv[idx];
            // w(x) = sum over the 0/1 cutoffs g_n with g_n(x) = 1, i.e.
            // |x| >= n, of alpha_{n+1}; the n = 0 term is always present.
            double sum = 0.0;
            for (int n = 0; n <= std::abs(x); ++n) sum += alpha[n + 1];
            wv[idx] = sum;
            if (wv[idx] < vv[idx] - 1e-12)
                throw SolverError("weight construction violated w >= v at x = " +
                                  std::to_string(x));
        }
        out.w.range = w;
        out.w.values = std::move(wv);
        out.u = std::move(uv);
        out.v = std::move(vv);
        return out;
    }
    const FiniteGroup& fg = g.finite_data();
    // Chain K_0 = {e}, K_n = G for n >= 1: the chain index of every element
    // is 1 and the suprema stabilize at the global maximum.
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::fabs(v));
    const double base = 1.0 + m; // = u = v everywhere; alpha_n = n * base
    Vec wv(fg.order()), uv(fg.order(), base), vv(fg.order(), base);
    for (int x = 0; x < fg.order(); ++x)
        wv[x] = x == fg.identity ? base : 3.0 * base; // alpha_1 (+ alpha_2 off identity)
    out.w.values = std::move(wv);
    out.u = std::move(uv);
    out.v = std::move(vv);
    return out;
}

GroupFunction convolve_direct(const Group& g, const GroupMeasure& mu, const GroupFunction& f) {
    for (const auto& [x, mass] : mu.support) {
        if (!(mass >= 0.0) || !std::isfinite(mass))
            throw ArgumentError("measure masses must be finite and nonnegative");
        if (g.is_integer() && std::abs(x) > g.integers_data().window)
            throw ArgumentError("measure support must lie inside the window");
    }
    if (!g.is_integer()) {
        const FiniteGroup& fg = g.finite_data();
        Vec out(fg.order(), 0.0);
        for (const auto& [x, mass] : mu.support) {
            if (x < 0 || x >= fg.order()) throw RangeError("support element outside the group");
            const int xinv = fg.inverse[x];
            for (int y = 0; y < fg.order(); ++y) out[y] += mass * f.values[fg.table[xinv][y]];
        }
        return make_finite_function(fg, std::move(out));
    }
    const int w = g.integers_data().window;
    int max_shift = 0;
    for (const auto& [x, mass] : mu.support) max_shift = std::max(max_shift, std::abs(x));
    if (f.range < w + max_shift)
        throw RangeError("convolution on the window needs values on [-" +
                         std::to_string(w + max_shift) + ", " + std::to_string(w + max_shift) +
                         "]; stored range is " + std::to_string(f.range));
    Vec out(2 * w + 1, 0.0);
    for (const auto& [x, mass] : mu.support)
        for (int y = -w; y <= w; ++y) out[y + w] += mass * f.at_int(y - x);
    GroupFunction res;
    res.range = w;
    res.values = std::move(out);
    return res;
}

ConvolveCheck convolve_via_integral(const Group& g, const GroupMeasure& mu,
                                    const GroupFunction& f, double tol_num) {
    const GroupFunction direct = convolve_direct(g, mu, f);
    const int size = g.carrier_size();

    ConvolveCheck check;
    std::vector<std::pair<int, double>> support;
    for (const auto& [x, mass] : mu.support)
        if (mass > 0.0) support.emplace_back(x, mass);
    if (support.empty()) {
        check.result = direct; // zero measure: both routes are zero
        check.transcript = {{"note", "empty support; integral route skipped"}};
        return check;
    }

    const WeightFunctions weights = weight_builder(g, f);
    Cover cover = Cover::principal_ideals(size, {weights.w.values});
    const std::string member = cover.member_ids().front();

    std::vector<Atom> atoms;
    std::vector<Vec> values;
    for (const auto& [x, mass] : support) {
        atoms.push_back({"x=" + std::to_string(x), mass});
        const GroupFunction lx = translate(g, f, x);
        // Certified membership: |L_x f| <= u(x) * w pointwise.
        const double ideal_norm = principal_ideal_norm(weights.w.values, lx.values);
        if (ideal_norm > weights.u_at(g, x) + tol_num)
            throw SolverError("translate at x = " + std::to_string(x) +
                              " violates the weight bound; construction bug");
        values.push_back(lx.values);
    }

    const MeasureSpace mu_space = MeasureSpace::finite(std::move(atoms));
    const Cover::UIntegral integral = cover.u_integral(mu_space, values);

    check.result = direct;
    check.result.values = integral.result.value.coords;
    check.max_deviation =
        linf_norm(sub(integral.result.value.coords, direct.values));
    if (check.max_deviation > tol_num)
        throw SolverError("integral route deviates from the direct convolution by " +
                          std::to_string(check.max_deviation));
    check.transcript = {{"member", member},
                        {"cover_transcript", integral.transcript},
                        {"max_deviation", check.max_deviation}};
    return check;
}

nlohmann::json group_function_to_json(const Group& g, const GroupFunction& f) {
    nlohmann::json j;
    j["values"] = f.values;
    if (g.is_integer()) j["range"] = f.range;
    if (f.growth) j["growth"] = {{"coeff", f.growth->coeff}, {"degree", f.growth->degree}};
    return j;
}

GroupFunction group_function_from_json(const Group& g, const nlohmann::json& j) {
    Vec values = j.at("values").get<Vec>();
    std::optional<Growth> growth;
    if (j.contains("growth"))
        growth = Growth{j.at("growth").at("coeff").get<double>(),
                        j.at("growth").at("degree").get<int>()};
    if (g.is_integer()) {
        int range = j.contains("range") ? j.at("range").get<int>()
                                        : (static_cast<int>(values.size()) - 1) / 2;
        return make_integer_function(range, std::move(values), growth);
    }
    return make_finite_function(g.finite_data(), std::move(values));
}

nlohmann::json group_measure_to_json(const GroupMeasure& mu) {
    nlohmann::json support = nlohmann::json::array();
    for (const auto& [x, mass] : mu.support)
        support.push_back({{"x", x}, {"mass", mass}});
    return {{"support", std::move(support)}};
}

GroupMeasure group_measure_from_json(const nlohmann::json& j) {
    GroupMeasure mu;
    for (const auto& s : j.at("support"))
        mu.support.emplace_back(s.at("x").get<int>(), s.at("mass").get<double>());
    return mu;
}

} // namespace orba
