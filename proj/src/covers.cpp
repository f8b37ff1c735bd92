#include "orba/covers.hpp"

#include "orba/cone_analysis.hpp"
#include "orba/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace orba {

namespace {

void check_weight_sizes(const Vec& w, const MeasureSpace& nu, const Vec& f) {
    if (w.size() != nu.atoms.size() || f.size() != nu.atoms.size())
        throw CarrierError("weight/function length does not match the measure space");
}

Vec pointwise_min(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
    return out;
}

Vec pointwise_abs_sup(const std::vector<Vec>& values, int dim) {
    Vec out(dim, 0.0);
    for (const Vec& v : values)
        for (int i = 0; i < dim; ++i) out[i] = std::max(out[i], std::fabs(v[i]));
    return out;
}

} // namespace

// --- function norms ----------------------------------------------------------

FunctionNorm FunctionNorm::weighted(Vec weight) {
    for (double w : weight)
        if (!(w > 0.0)) throw ArgumentError("function-norm weight must be positive");
    FunctionNorm n;
    n.kind_ = Kind::WeightedL1Koethe;
    n.weight_ = std::move(weight);
    return n;
}

FunctionNorm FunctionNorm::merged(FunctionNorm rho1, FunctionNorm rho2) {
    if (rho1.effective_weight().size() != rho2.effective_weight().size())
        throw CarrierError("merged norms must share a measure space");
    FunctionNorm n;
    n.kind_ = Kind::Merged;
    n.rho1_ = std::make_shared<FunctionNorm>(std::move(rho1));
    n.rho2_ = std::make_shared<FunctionNorm>(std::move(rho2));
    return n;
}

Vec FunctionNorm::effective_weight() const {
    if (kind_ == Kind::WeightedL1Koethe) return weight_;
    return pointwise_min(rho1_->effective_weight(), rho2_->effective_weight());
}

double FunctionNorm::evaluate(const MeasureSpace& nu, const Vec& f) const {
    const Vec w = effective_weight();
    check_weight_sizes(w, nu, f);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += std::fabs(f[i]) * w[i] * nu.atoms[i].weight;
    return s;
}

double FunctionNorm::evaluate_grid(const MeasureSpace& nu, const Vec& f, double step) const {
    if (kind_ == Kind::WeightedL1Koethe) return evaluate(nu, f);
    if (!(step > 0.0) || step >= 1.0) throw ArgumentError("grid step must be in (0,1)");

    // inf { rho1(g) + rho2(h) : g,h >= 0, g+h >= |f| }. Both norms are
    // monotone, so h = (|f| - g)+ pointwise and the search is separable per
    // atom: scan the split fraction on a grid and refine around the best.
    double total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double fa = std::fabs(f[i]);
        if (fa == 0.0) continue;
        Vec g(f.size(), 0.0), h(f.size(), 0.0);
        auto cost = [&](double t) {
            g[i] = t * fa;
            h[i] = fa - g[i];
            const double c = rho1_->evaluate(nu, g) + rho2_->evaluate(nu, h);
            g[i] = h[i] = 0.0;
            return c;
        };
        double best_t = 0.0, best = cost(0.0);
        for (double t = step; t <= 1.0 + 1e-12; t += step) {
            const double c = cost(std::min(t, 1.0));
            if (c < best) {
                best = c;
                best_t = std::min(t, 1.0);
            }
        }
        const double fine = step / 100.0;
        for (double t = std::max(0.0, best_t - step); t <= std::min(1.0, best_t + step);
             t += fine) {
            const double c = cost(t);
            if (c < best) best = c;
        }
        total += best;
    }
    return total;
}

double koethe_norm(const Vec& w, const MeasureSpace& nu, const Vec& f) {
    check_weight_sizes(w, nu, f);
    for (double wi : w)
        if (!(wi > 0.0)) throw ArgumentError("Köthe weight must be strictly positive");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += std::fabs(f[i]) * w[i] * nu.atoms[i].weight;
    return s;
}

double merged_norm(const Vec& w1, const Vec& w2, const MeasureSpace& nu, const Vec& f) {
    if (w1.size() != w2.size()) throw CarrierError("mismatched measure spaces");
    return koethe_norm(pointwise_min(w1, w2), nu, f);
}

double merged_norm_grid(const Vec& w1, const Vec& w2, const MeasureSpace& nu, const Vec& f,
                        double step) {
    return FunctionNorm::merged(FunctionNorm::weighted(w1), FunctionNorm::weighted(w2))
        .evaluate_grid(nu, f, step);
}

double principal_ideal_norm(const Vec& u, const Vec& f) {
    if (u.size() != f.size()) throw CarrierError("unit/function length mismatch");
    double lambda = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0.0) throw ArgumentError("ideal unit must be nonnegative");
        if (u[i] == 0.0) {
            if (std::fabs(f[i]) > 0.0)
                throw NotInIdealError("function is nonzero off the unit's support");
            continue;
        }
        lambda = std::max(lambda, std::fabs(f[i]) / u[i]);
    }
    return lambda;
}

// --- cover -------------------------------------------------------------------

Cover Cover::ordered_subspaces(SpacePtr ambient, std::vector<SpacePtr> members) {
    if (!ambient) throw ArgumentError("cover needs an ambient space");
    Cover c;
    c.kind_ = Kind::OrderedSubspaces;
    c.ambient_dim_ = ambient->dim;
    c.ambient_ = std::move(ambient);
    for (auto& m : members) {
        if (!m) throw ArgumentError("null cover member");
        if (m->dim != c.ambient_dim_)
            throw ArgumentError("cover members must live in ambient coordinates");
        c.registry_->members.push_back({m->id, std::move(m), {}});
    }
    c.registry_->next_index = static_cast<int>(c.registry_->members.size());
    return c;
}

Cover Cover::principal_ideals(int ambient_dim, std::vector<Vec> units,
                              double off_support_delta) {
    if (ambient_dim <= 0) throw ArgumentError("ambient dimension must be positive");
    Cover c;
    c.kind_ = Kind::PrincipalIdeals;
    c.ambient_dim_ = ambient_dim;
    c.delta_ = off_support_delta;
    for (auto& u : units) {
        if (static_cast<int>(u.size()) != ambient_dim)
            throw ArgumentError("unit length does not match ambient dimension");
        for (double ui : u)
            if (ui < 0.0) throw ArgumentError("ideal units must be nonnegative");
        if (linf_norm(u) == 0.0) throw ArgumentError("ideal units must be nonzero");
        const std::string id = "pi:" + std::to_string(c.registry_->next_index++);
        c.registry_->members.push_back({id, c.build_principal_ideal_space(id, u), std::move(u)});
    }
    return c;
}

Cover Cover::koethe_weights(MeasureSpace nu, std::vector<Vec> weights, Vec reference_summable) {
    Cover c;
    c.kind_ = Kind::KoetheWeights;
    c.ambient_dim_ = nu.size();
    c.nu_ = std::move(nu);
    if (reference_summable.empty()) {
        // Default reference: u_i = 2^-i, summable along the atom index.
        reference_summable.resize(c.ambient_dim_);
        for (int i = 0; i < c.ambient_dim_; ++i)
            reference_summable[i] = std::pow(2.0, -i);
    }
    if (static_cast<int>(reference_summable.size()) != c.ambient_dim_)
        throw ArgumentError("reference length does not match the measure space");
    for (double r : reference_summable)
        if (!(r > 0.0)) throw ArgumentError("reference must be strictly positive");
    c.reference_summable_ = std::move(reference_summable);
    for (auto& w : weights) {
        if (static_cast<int>(w.size()) != c.ambient_dim_)
            throw ArgumentError("weight length does not match the measure space");
        for (double wi : w)
            if (!(wi > 0.0)) throw ArgumentError("Köthe weights must be strictly positive");
        const std::string id = "kw:" + std::to_string(c.registry_->next_index++);
        c.registry_->members.push_back({id, c.build_koethe_space(id, w), std::move(w)});
    }
    return c;
}

SpacePtr Cover::build_principal_ideal_space(const std::string& id, const Vec& unit) const {
    SpaceOptions opts;
    opts.skip_directed_check = true;
    opts.order_unit_check_vectors = {unit};
    auto space = OrderedSpace::make(id, ConeSpec::orthant(ambient_dim_),
                                    NormSpec::order_unit(unit), opts);
    // The ideal spans the coordinates inside the unit's support.
    int support = 0;
    for (double ui : unit)
        if (ui > 0.0) ++support;
    Mat span(ambient_dim_, support);
    int c = 0;
    for (int i = 0; i < ambient_dim_; ++i)
        if (unit[i] > 0.0) span.at(i, c++) = 1.0;
    std::const_pointer_cast<OrderedSpace>(space)->span = std::move(span);
    return space;
}

SpacePtr Cover::build_koethe_space(const std::string& id, const Vec& weight) const {
    Vec scaled(ambient_dim_);
    for (int i = 0; i < ambient_dim_; ++i) scaled[i] = weight[i] * nu_.atoms[i].weight;
    SpaceOptions opts;
    opts.skip_directed_check = true;
    return OrderedSpace::make(id, ConeSpec::orthant(ambient_dim_),
                              NormSpec::weighted_l1(std::move(scaled)), opts);
}

std::vector<Cover::Member> Cover::snapshot() const {
    std::lock_guard<std::mutex> lock(registry_->mutex);
    return registry_->members;
}

std::string Cover::register_member(Member m) const {
    std::lock_guard<std::mutex> lock(registry_->mutex);
    for (const Member& existing : registry_->members)
        if (!m.data.empty() && existing.data == m.data) return existing.id;
    registry_->members.push_back(std::move(m));
    return registry_->members.back().id;
}

std::string Cover::fresh_id(const char* prefix) const {
    std::lock_guard<std::mutex> lock(registry_->mutex);
    return std::string(prefix) + std::to_string(registry_->next_index++);
}

std::vector<std::string> Cover::member_ids() const {
    std::vector<std::string> ids;
    for (const Member& m : snapshot()) ids.push_back(m.id);
    return ids;
}

SpacePtr Cover::member_space(const std::string& id) const {
    for (const Member& m : snapshot())
        if (m.id == id) return m.space;
    throw ArgumentError("unknown cover member '" + id + "'");
}

Vec Cover::member_data(const std::string& id) const {
    for (const Member& m : snapshot())
        if (m.id == id) return m.data;
    throw ArgumentError("unknown cover member '" + id + "'");
}

bool Cover::member_contains(const std::string& id, const Vec& value) const {
    const SpacePtr space = member_space(id);
    try {
        (void)norm_value(*space, value);
        return true;
    } catch (const NotInSpaceError&) {
        return false;
    }
}

std::string Cover::assign_member(const std::vector<Vec>& values) const {
    for (const Vec& v : values)
        if (static_cast<int>(v.size()) != ambient_dim_)
            throw CarrierError("value length does not match ambient dimension");

    const bool all_zero =
        std::all_of(values.begin(), values.end(), [](const Vec& v) { return linf_norm(v) == 0.0; });

    switch (kind_) {
        case Kind::OrderedSubspaces: {
            for (const Member& m : snapshot()) {
                const bool contains_all = std::all_of(
                    values.begin(), values.end(),
                    [&](const Vec& v) { return member_contains(m.id, v); });
                if (contains_all) return m.id;
            }
            if (all_zero) {
                // Designated default: the ambient space itself.
                Member m{ambient_->id, ambient_, {}};
                return register_member(std::move(m));
            }
            // Construct an order-unit member from per-value dominators.
            Vec a(ambient_dim_, 0.0);
            for (const Vec& v : values) {
                if (linf_norm(v) == 0.0) continue;
                DominatorResult dom;
                try {
                    dom = min_dominator(*ambient_, Vector{ambient_->id, v});
                } catch (const NoDominatorError&) {
                    throw UncoverableError("a value is not order bounded in the ambient space");
                }
                a = add(a, dom.a.coords);
            }
            const std::string id = fresh_id("os:");
            SpaceOptions opts;
            opts.skip_directed_check = true;
            opts.order_unit_check_vectors = values;
            opts.order_unit_check_vectors.push_back(a);
            auto space = OrderedSpace::make(id, ambient_->cone, NormSpec::order_unit(a), opts);
            std::vector<Vec> span_cols = values;
            span_cols.push_back(a);
            std::const_pointer_cast<OrderedSpace>(space)->span =
                transpose(Mat::from_rows(span_cols));
            return register_member({id, std::move(space), std::move(a)});
        }
        case Kind::PrincipalIdeals: {
            if (all_zero && !snapshot().empty()) return snapshot().front().id;
            // Unit: atomwise sup of |values| made strictly positive by the
            // documented off-support delta.
            Vec u = pointwise_abs_sup(values, ambient_dim_);
            for (double& ui : u) ui += delta_;
            const std::string id = fresh_id("pi:");
            return register_member({id, build_principal_ideal_space(id, u), std::move(u)});
        }
        case Kind::KoetheWeights: {
            if (all_zero && !snapshot().empty()) return snapshot().front().id;
            // w = (sup|values| + 1)^-1 * u for the summable reference u.
            const Vec sup = pointwise_abs_sup(values, ambient_dim_);
            Vec w(ambient_dim_);
            for (int i = 0; i < ambient_dim_; ++i)
                w[i] = reference_summable_[i] / (sup[i] + 1.0);
            const std::string id = fresh_id("kw:");
            return register_member({id, build_koethe_space(id, w), std::move(w)});
        }
    }
    throw UncoverableError("no member constructible for the presented values");
}

std::string Cover::join(const std::string& id1, const std::string& id2) const {
    const SpacePtr d1 = member_space(id1);
    const SpacePtr d2 = member_space(id2);
    switch (kind_) {
        case Kind::OrderedSubspaces: {
            const std::string id = fresh_id("os-join:");
            auto joined = sum_space(id, d1, d2, Mat::identity(ambient_dim_),
                                    Mat::identity(ambient_dim_));
            return register_member({id, std::move(joined), {}});
        }
        case Kind::PrincipalIdeals: {
            const Vec u = add(member_data(id1), member_data(id2));
            const std::string id = fresh_id("pi:");
            return register_member({id, build_principal_ideal_space(id, u), u});
        }
        case Kind::KoetheWeights: {
            const Vec w = pointwise_min(member_data(id1), member_data(id2));
            const std::string id = fresh_id("kw:");
            return register_member({id, build_koethe_space(id, w), w});
        }
    }
    throw ArgumentError("unknown cover kind");
}

Cover::UIntegral Cover::u_integral(const MeasureSpace& mu, const std::vector<Vec>& values,
                                   std::optional<double> tail_norm_bound) const {
    UIntegral out;
    out.member = assign_member(values);

    // An alternative member containing the same values, when one exists.
    out.alt_member = out.member;
    for (const Member& m : snapshot()) {
        if (m.id == out.member) continue;
        const bool contains_all = std::all_of(
            values.begin(), values.end(),
            [&](const Vec& v) { return member_contains(m.id, v); });
        if (contains_all) {
            out.alt_member = m.id;
            break;
        }
    }
    out.join_member = join(out.member, out.alt_member);

    auto integrate_in = [&](const std::string& id) {
        const SpacePtr space = member_space(id);
        IntegrableFunction f = make_function(mu, *space, values, tail_norm_bound);
        return bochner_integral(*space, f);
    };
    const BochnerResult in_member = integrate_in(out.member);
    const BochnerResult in_alt = integrate_in(out.alt_member);
    const BochnerResult in_join = integrate_in(out.join_member);

    out.max_deviation =
        std::max(linf_norm(sub(in_member.value.coords, in_join.value.coords)),
                 linf_norm(sub(in_alt.value.coords, in_join.value.coords)));
    out.result = in_member;

    out.transcript = nlohmann::json{
        {"member", out.member},
        {"alt_member", out.alt_member},
        {"join_member", out.join_member},
        {"integral", in_member.value.coords},
        {"integral_alt", in_alt.value.coords},
        {"integral_join", in_join.value.coords},
        {"max_deviation", out.max_deviation},
    };
    return out;
}

nlohmann::json Cover::to_json() const {
    nlohmann::json j;
    nlohmann::json members = nlohmann::json::array();
    switch (kind_) {
        case Kind::OrderedSubspaces:
            j["kind"] = "ordered_subspaces";
            j["ambient"] = space_to_json(*ambient_);
            for (const Member& m : snapshot()) members.push_back(space_to_json(*m.space));
            break;
        case Kind::PrincipalIdeals:
            j["kind"] = "principal_ideals";
            j["ambient_dim"] = ambient_dim_;
            for (const Member& m : snapshot()) members.push_back(m.data);
            break;
        case Kind::KoetheWeights:
            j["kind"] = "koethe_weights";
            j["nu"] = measure_to_json(nu_);
            j["reference"] = reference_summable_;
            for (const Member& m : snapshot()) members.push_back(m.data);
            break;
    }
    j["members"] = std::move(members);
    return j;
}

Cover Cover::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ordered_subspaces") {
        std::vector<SpacePtr> members;
        for (const auto& m : j.at("members")) members.push_back(space_from_json(m));
        return ordered_subspaces(space_from_json(j.at("ambient")), std::move(members));
    }
    if (kind == "principal_ideals") {
        std::vector<Vec> units;
        for (const auto& m : j.at("members")) units.push_back(m.get<Vec>());
        return principal_ideals(j.at("ambient_dim").get<int>(), std::move(units));
    }
    if (kind == "koethe_weights") {
        std::vector<Vec> weights;
        for (const auto& m : j.at("members")) weights.push_back(m.get<Vec>());
        Vec reference;
        if (j.contains("reference")) reference = j.at("reference").get<Vec>();
        return koethe_weights(measure_from_json(j.at("nu")), std::move(weights),
                              std::move(reference));
    }
    throw ArgumentError("unknown cover kind '" + kind + "'");
}

} // namespace orba
