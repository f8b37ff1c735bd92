#include "orba/cone_analysis.hpp"

#include "orba/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace orba {

namespace {

constexpr double kRatioGuard = 1e-12; // N below this counts as zero

Mat effective_span(const OrderedSpace& space) {
    if (!space.span.empty()) return space.span;
    switch (space.norm.kind) {
        case NormSpec::Kind::InfSum:
            return hcat(space.norm.left_embedding, space.norm.right_embedding);
        case NormSpec::Kind::Quotient:
            return space.norm.map;
        default:
            return Mat::identity(space.dim);
    }
}

bool lattice_instance(const OrderedSpace& space) {
    return space.cone.kind == ConeSpec::Kind::Orthant &&
           (space.norm.kind == NormSpec::Kind::WeightedL1 ||
            space.norm.kind == NormSpec::Kind::Sup);
}

struct DominatorProgram {
    lp::Builder builder;
    std::vector<int> a_vars;
};

DominatorProgram dominator_constraints(const OrderedSpace& space, const Vec& x) {
    DominatorProgram prog;
    prog.a_vars = prog.builder.add_vars(space.dim);
    const AffineVec a = affine_from_vars(prog.a_vars);
    const AffineVec cx = affine_constant(x);
    append_cone_membership(prog.builder, space.cone, a);
    append_cone_membership(prog.builder, space.cone, affine_sub(a, cx));
    append_cone_membership(prog.builder, space.cone, affine_add(a, cx));
    return prog;
}

} // namespace

DominatorResult min_dominator(const OrderedSpace& space, const Vector& x) {
    if (x.space != space.id)
        throw CarrierError("vector tagged '" + x.space + "' used with space '" + space.id + "'");
    DominatorProgram prog = dominator_constraints(space, x.coords);
    append_norm_objective(prog.builder, space, affine_from_vars(prog.a_vars));
    const auto sol = lp::solve(prog.builder.build(), {space.tol_lp});
    if (sol.status == lp::Status::Infeasible)
        throw NoDominatorError("no dominating cone element exists for this vector");
    if (sol.status != lp::Status::Optimal)
        throw SolverError("dominator program did not reach an optimum");

    DominatorResult res;
    Vec a(space.dim);
    for (int i = 0; i < space.dim; ++i) a[i] = sol.point[prog.a_vars[i]];
    res.a = Vector{space.id, std::move(a)};
    res.value = sol.objective;
    res.residual = sol.max_residual;

    // Internal consistency: the reported value must be the norm of the
    // returned element.
    const double check = norm_value(space, res.a.coords);
    if (std::fabs(check - res.value) > kToleranceNum * std::max(1.0, check))
        throw SolverError("dominator value disagrees with the norm of its witness");
    return res;
}

double n_norm(const OrderedSpace& space, const Vector& x) {
    return min_dominator(space, x).value;
}

std::optional<Vec> sample_unit_vector(const OrderedSpace& space, Sampler& rng) {
    const Mat span = effective_span(space);
    for (int attempt = 0; attempt < 16; ++attempt) {
        Vec coeffs(span.cols);
        for (double& c : coeffs) c = rng.normal();
        Vec x = matvec(span, coeffs);
        const double nrm = norm_value(space, x);
        if (nrm < kRatioGuard) continue;
        return scale(1.0 / nrm, x);
    }
    return std::nullopt;
}

DominatingScan dominating_ratio_scan(const OrderedSpace& space, const ScanOptions& opts) {
    if (opts.samples <= 0) throw ArgumentError("sample count must be positive");
    Sampler rng(opts.seed);
    DominatingScan scan;
    scan.samples = opts.samples;
    scan.seed = opts.seed;
    bool saw_equality = false;

    auto consider = [&](const Vec& coords) {
        const double nrm = norm_value(space, coords);
        if (nrm < kRatioGuard) return;
        const Vector x{space.id, coords};
        const double n_val = n_norm(space, x);
        const double ratio = n_val / nrm;
        if (std::fabs(n_val - nrm) <= opts.tol_num * std::max(1.0, nrm))
            saw_equality = true;
        if (ratio > scan.c_lower || scan.witness.coords.empty()) {
            scan.c_lower = std::max(scan.c_lower, ratio);
            scan.witness = x;
        }
    };

    for (int i = 0; i < opts.samples; ++i) {
        if (auto x = sample_unit_vector(space, rng)) consider(*x);
    }
    for (const Vec& probe : opts.extra_probes) consider(probe);

    scan.exact = lattice_instance(space) || space.norm.kind == NormSpec::Kind::OrderUnit;
    scan.below_one_flagged = scan.c_lower < 1.0 - opts.tol_num;
    if (saw_equality && scan.c_lower < 1.0 - opts.tol_num)
        throw SolverError("scan saw an equality sample yet reported C_lower < 1");
    return scan;
}

NormalityScan normality_ratio_scan(const OrderedSpace& space, const ScanOptions& opts) {
    if (opts.samples <= 0) throw ArgumentError("sample count must be positive");
    Sampler rng(opts.seed);
    NormalityScan scan;
    scan.samples = opts.samples;
    scan.seed = opts.seed;

    auto consider = [&](const Vec& coords) {
        const double nrm = norm_value(space, coords);
        if (nrm < kRatioGuard) return;
        const Vector x{space.id, coords};
        const double n_val = n_norm(space, x);
        if (n_val < kRatioGuard) {
            ++scan.excluded;
            return;
        }
        const double ratio = nrm / n_val;
        if (ratio > scan.ratio || scan.witness.coords.empty()) {
            scan.ratio = std::max(scan.ratio, ratio);
            scan.witness = x;
        }
    };

    for (int i = 0; i < opts.samples; ++i) {
        if (auto x = sample_unit_vector(space, rng)) consider(*x);
    }
    for (const Vec& probe : opts.extra_probes) consider(probe);
    return scan;
}

RenormedSpace::RenormedSpace(SpacePtr base, double epsilon,
                             double sampled_equivalence_constant)
    : base_(std::move(base)), epsilon_(epsilon),
      c_sampled_(sampled_equivalence_constant) {}

RenormedSpace::RhoValue RenormedSpace::rho(const Vector& x) const {
    RhoValue v;
    v.base_part = norm(*base_, x);
    v.n_part = epsilon_ * n_norm(*base_, x);
    v.value = v.base_part + v.n_part;
    return v;
}

RenormedSpace::RhoDominator RenormedSpace::min_dominator(const Vector& x) const {
    const OrderedSpace& sp = *base_;
    if (x.space != sp.id)
        throw CarrierError("vector tagged '" + x.space + "' used with space '" + sp.id + "'");
    // Joint program over (a, b): b dominates a, so the b-part of the
    // objective is eps*N(a) at the optimum.
    lp::Builder b;
    const auto a_vars = b.add_vars(sp.dim);
    const auto b_vars = b.add_vars(sp.dim);
    const AffineVec a = affine_from_vars(a_vars);
    const AffineVec bb = affine_from_vars(b_vars);
    const AffineVec cx = affine_constant(x.coords);
    append_cone_membership(b, sp.cone, a);
    append_cone_membership(b, sp.cone, affine_sub(a, cx));
    append_cone_membership(b, sp.cone, affine_add(a, cx));
    append_cone_membership(b, sp.cone, bb);
    append_cone_membership(b, sp.cone, affine_sub(bb, a));
    append_cone_membership(b, sp.cone, affine_add(bb, a));
    append_norm_objective(b, sp, a, 1.0);
    append_norm_objective(b, sp, bb, epsilon_);
    const auto sol = lp::solve(b.build(), {sp.tol_lp});
    if (sol.status == lp::Status::Infeasible)
        throw NoDominatorError("no dominating cone element exists for this vector");
    if (sol.status != lp::Status::Optimal)
        throw SolverError("renormed dominator program did not reach an optimum");

    RhoDominator out;
    Vec av(sp.dim);
    for (int i = 0; i < sp.dim; ++i) av[i] = sol.point[a_vars[i]];
    out.a = Vector{sp.id, std::move(av)};
    out.rho_a = rho(out.a);
    out.residual = sol.max_residual;
    return out;
}

DominatingScan RenormedSpace::dominating_ratio_scan(const ScanOptions& opts) const {
    if (opts.samples <= 0) throw ArgumentError("sample count must be positive");
    Sampler rng(opts.seed);
    DominatingScan scan;
    scan.samples = opts.samples;
    scan.seed = opts.seed;

    auto consider = [&](const Vec& coords) {
        const Vector x{base_->id, coords};
        const RhoValue rx = rho(x);
        if (rx.value < kRatioGuard) return;
        const RhoDominator dom = min_dominator(x);
        const double ratio = dom.rho_a.value / rx.value;
        if (ratio > scan.c_lower || scan.witness.coords.empty()) {
            scan.c_lower = std::max(scan.c_lower, ratio);
            scan.witness = x;
        }
    };

    for (int i = 0; i < opts.samples; ++i) {
        if (auto x = sample_unit_vector(*base_, rng)) consider(*x);
    }
    for (const Vec& probe : opts.extra_probes) consider(probe);
    scan.below_one_flagged = scan.c_lower < 1.0 - opts.tol_num;
    return scan;
}

RenormedSpace renorm_eps(SpacePtr space, double epsilon, const RenormOptions& opts) {
    if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
    ScanOptions scan_opts;
    scan_opts.samples = opts.equivalence_scan_samples;
    scan_opts.seed = opts.seed;
    const DominatingScan scan = dominating_ratio_scan(*space, scan_opts);
    return RenormedSpace(std::move(space), epsilon, scan.c_lower);
}

nlohmann::json scan_report_json(const OrderedSpace& space, const DominatingScan& dom,
                                const NormalityScan& nrm) {
    nlohmann::json j;
    j["space"] = space.id;
    j["samples"] = dom.samples;
    j["seed"] = dom.seed;
    j["C_lower"] = dom.c_lower;
    j["normality_ratio"] = nrm.ratio;
    j["witness"] = dom.witness.coords;
    j["normality_witness"] = nrm.witness.coords;
    j["exact"] = dom.exact;
    j["below_one_flagged"] = dom.below_one_flagged;
    j["excluded_zero_n_samples"] = nrm.excluded;
    return j;
}

} // namespace orba
