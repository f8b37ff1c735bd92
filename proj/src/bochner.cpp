#include "orba/bochner.hpp"

#include "orba/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace orba {

namespace {

void check_function(const OrderedSpace& carrier, const IntegrableFunction& f) {
    if (f.carrier != carrier.id)
        throw CarrierError("function carrier '" + f.carrier + "' used with space '" +
                           carrier.id + "'");
    for (const Vec& v : f.values)
        if (static_cast<int>(v.size()) != carrier.dim)
            throw CarrierError("value length does not match carrier dimension");
}

Vec weighted_sum(const OrderedSpace& carrier, const IntegrableFunction& f) {
    Vec out(carrier.dim, 0.0);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        out = add(out, scale(f.space.atoms[i].weight, f.values[i]));
    return out;
}

double resolve_c_sampled(const OrderedSpace& carrier, const DominateOptions& opts) {
    if (opts.c_sampled) return *opts.c_sampled;
    ScanOptions scan;
    scan.samples = opts.scan_samples;
    scan.seed = opts.seed;
    // Coordinate directions probe the extreme rays where domination is
    // typically tight; including them makes the sampled constant stable.
    for (int i = 0; i < carrier.dim; ++i) {
        Vec e(carrier.dim, 0.0);
        e[i] = 1.0;
        scan.extra_probes.push_back(std::move(e));
    }
    return dominating_ratio_scan(carrier, scan).c_lower;
}

bool is_zero(const Vec& v) { return linf_norm(v) == 0.0; }

} // namespace

BochnerResult bochner_integral(const OrderedSpace& carrier, const IntegrableFunction& f) {
    check_function(carrier, f);
    BochnerResult res;
    if (f.space.kind == MeasureSpace::Kind::TruncatedN) {
        const double tail = f.effective_tail_bound();
        if (!std::isfinite(tail))
            throw NotIntegrableError("tail bound is not finite; function is not integrable");
        res.error_bound = tail;
    }
    res.value = Vector{carrier.id, weighted_sum(carrier, f)};
    return res;
}

BochnerResult pushforward_integrate(const Mat& map, const OrderedSpace& source,
                                    const OrderedSpace& target, const IntegrableFunction& f,
                                    double tol_num) {
    check_function(source, f);
    if (map.cols != source.dim || map.rows != target.dim)
        throw CarrierError("map dimensions do not match source/target spaces");

    const auto gens = source.cone.generators();
    if (!gens)
        throw CapabilityError("pushforward needs enumerable source cone generators");
    for (int j = 0; j < gens->cols; ++j)
        if (!cone_contains(target.cone, matvec(map, gens->col(j)), target.tol_cone))
            throw OrderError("map is not order preserving on the source cone generators");

    std::vector<Vec> mapped;
    mapped.reserve(f.values.size());
    for (const Vec& v : f.values) mapped.push_back(matvec(map, v));
    IntegrableFunction tf = make_function(f.space, target, std::move(mapped),
                                          f.tail_norm_bound);

    const BochnerResult via_target = bochner_integral(target, tf);
    const BochnerResult via_source = bochner_integral(source, f);
    const Vec transported = matvec(map, via_source.value.coords);
    const double dev = linf_norm(sub(via_target.value.coords, transported));
    if (dev > tol_num)
        throw SolverError("pushforward identity violated beyond tolerance: deviation " +
                          std::to_string(dev));
    return via_target;
}

DominatedPair simple_dominate(const OrderedSpace& carrier, const IntegrableFunction& f,
                              double epsilon, const DominateOptions& opts) {
    check_function(carrier, f);
    if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");

    // Group atoms by identical values; the minimal dominator is computed
    // once per distinct value.
    std::map<Vec, Vec> dominator_of;
    double support_mass = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (!is_zero(f.values[i])) support_mass += f.space.atoms[i].weight;

    std::vector<Vec> g_values(f.values.size(), Vec(carrier.dim, 0.0));
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const Vec& x = f.values[i];
        if (is_zero(x)) continue;
        auto it = dominator_of.find(x);
        if (it == dominator_of.end()) {
            const DominatorResult dom = min_dominator(carrier, Vector{carrier.id, x});
            it = dominator_of.emplace(x, dom.a.coords).first;
        }
        g_values[i] = it->second;
    }

    DominatedPair pair;
    pair.f = f;
    pair.g = make_function(f.space, carrier, std::move(g_values), f.tail_norm_bound);
    pair.epsilon = epsilon;
    pair.c_sampled = resolve_c_sampled(carrier, opts);
    pair.c_used = pair.c_sampled * opts.safety_factor;
    pair.per_set_slack = support_mass > 0.0 ? epsilon / support_mass : 0.0;

    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (!cone_contains(carrier.cone, sub(pair.g.values[i], f.values[i]), carrier.tol_cone) ||
            !cone_contains(carrier.cone, add(pair.g.values[i], f.values[i]), carrier.tol_cone))
            throw SolverError("dominating function fails the order sandwich at atom " +
                              std::to_string(i));
    }
    const double lhs = l1_norm(carrier, pair.g).value;
    const double rhs = pair.c_used * l1_norm(carrier, f).value + epsilon;
    if (lhs > rhs + kToleranceNum)
        throw SolverError("dominating function exceeds the certified l1 bound");
    return pair;
}

DominatedPair bochner_dominate(const OrderedSpace& carrier, const IntegrableFunction& f,
                               double epsilon, const DominateOptions& opts) {
    check_function(carrier, f);
    if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");

    const int atom_count = f.space.size();
    const double tail = f.effective_tail_bound();

    // Residual l1 mass beyond the first k stored atoms (plus the certified
    // tail beyond the truncation).
    std::vector<double> atom_l1(atom_count);
    for (int i = 0; i < atom_count; ++i)
        atom_l1[i] = f.space.atoms[i].weight * norm_value(carrier, f.values[i]);
    std::vector<double> residual(atom_count + 1, tail);
    for (int k = atom_count - 1; k >= 0; --k) residual[k] = residual[k + 1] + atom_l1[k];

    // Cut points of the prefix approximants s_n along the dyadic schedule
    // l1(f - s_n) < eps * 2^-(n+1). The residuals decrease in k while the
    // budgets halve per step, so either the cuts reach the last atom or the
    // tail outgrows a budget and the schedule is infeasible.
    std::vector<int> cuts;
    int prev = 0;
    for (int step = 1;; ++step) {
        const double budget = epsilon * std::pow(2.0, -(step + 1));
        if (!(tail < budget)) {
            if (prev == atom_count) break;
            throw ScheduleError(
                "slack schedule infeasible at step " + std::to_string(step) +
                ": certified tail " + std::to_string(tail) + " is not below the budget " +
                std::to_string(budget) + "; increase epsilon or extend the truncation");
        }
        int k = prev;
        while (!(residual[k] < budget)) ++k;
        cuts.push_back(k);
        prev = k;
        // Zero residual means the prefix already equals f in l1; every later
        // telescoping increment vanishes.
        if (k == atom_count || residual[k] == 0.0) break;
    }

    // Telescope: f_n = s_n - s_{n-1} lives on the atoms between consecutive
    // cuts; dominate each piece by its per-atom minimal dominator.
    std::vector<Vec> g_values(atom_count, Vec(carrier.dim, 0.0));
    int from = 0;
    for (int cut : cuts) {
        for (int i = from; i < cut; ++i) {
            if (is_zero(f.values[i])) continue;
            const DominatorResult dom =
                min_dominator(carrier, Vector{carrier.id, f.values[i]});
            g_values[i] = dom.a.coords;
        }
        from = cut;
    }

    DominatedPair pair;
    pair.f = f;
    pair.c_sampled = resolve_c_sampled(carrier, opts);
    pair.c_used = pair.c_sampled * opts.safety_factor;
    pair.epsilon = epsilon;
    const double g_tail = pair.c_used * tail;
    pair.g = make_function(f.space, carrier, std::move(g_values), g_tail);

    // The construction must deliver both halves of its contract.
    for (int i = 0; i < atom_count; ++i) {
        if (!cone_contains(carrier.cone, sub(pair.g.values[i], f.values[i]), carrier.tol_cone) ||
            !cone_contains(carrier.cone, add(pair.g.values[i], f.values[i]), carrier.tol_cone))
            throw SolverError("dominating function fails the order sandwich at atom " +
                              std::to_string(i));
    }
    const double lhs = l1_norm(carrier, pair.g).value;
    const double rhs = pair.c_used * (l1_norm(carrier, f).value + epsilon);
    if (lhs > rhs + kToleranceNum)
        throw SolverError("dominating function exceeds the certified l1 bound");
    return pair;
}

bool pettis_verify(const OrderedSpace& carrier, const IntegrableFunction& f,
                   const std::vector<Vec>& functionals, const Vector& candidate,
                   double tol_num) {
    check_function(carrier, f);
    if (candidate.space != carrier.id)
        throw CarrierError("candidate vector is not carried by the space");
    for (const Vec& alpha : functionals) {
        double integral_of_alpha = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i)
            integral_of_alpha += f.space.atoms[i].weight * dot(alpha, f.values[i]);
        if (std::fabs(dot(alpha, candidate.coords) - integral_of_alpha) >
            tol_num * std::max(1.0, std::fabs(integral_of_alpha)))
            return false;
    }
    return true;
}

bool pettis_check(const OrderedSpace& carrier, const IntegrableFunction& f, double tol_num) {
    const std::vector<Vec> functionals = dual_generators(carrier);
    const BochnerResult integral = bochner_integral(carrier, f);
    if (!pettis_verify(carrier, f, functionals, integral.value, tol_num)) return false;

    // Uniqueness: the functionals form an invertible system, so the vector
    // matching all functional integrals is unique; solve and compare.
    Mat m = Mat::from_rows(functionals);
    Vec rhs(functionals.size(), 0.0);
    for (std::size_t r = 0; r < functionals.size(); ++r)
        for (std::size_t i = 0; i < f.values.size(); ++i)
            rhs[r] += f.space.atoms[i].weight * dot(functionals[r], f.values[i]);
    const auto solved = solve_square(m, rhs);
    if (!solved) throw CapabilityError("dual system is singular; cone is not simplicial");
    return linf_norm(sub(*solved, integral.value.coords)) <= tol_num;
}

} // namespace orba
