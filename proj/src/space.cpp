#include "orba/space.hpp"

#include "orba/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace orba {

namespace {

lp::Builder::Expr combine_rows(const Vec& coeffs, const AffineVec& expr) {
    lp::Builder::Expr out;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const double c = coeffs[j];
        if (c == 0.0) continue;
        out.constant += c * expr[j].constant;
        for (const auto& [var, coeff] : expr[j].terms) out.add(var, c * coeff);
    }
    return out;
}

void check_carrier(const OrderedSpace& space, const Vector& x) {
    if (x.space != space.id)
        throw CarrierError("vector tagged '" + x.space + "' used with space '" +
                           space.id + "'");
    if (static_cast<int>(x.coords.size()) != space.dim)
        throw CarrierError("vector length " + std::to_string(x.coords.size()) +
                           " does not match dim " + std::to_string(space.dim));
}

bool order_unit_dominates(const ConeSpec& cone, const Vec& a, const Vec& v,
                          double tol_lp) {
    lp::Builder b;
    const int s = b.add_var(0.0, lp::kInf);
    AffineVec sa_minus(v.size()), sa_plus(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        sa_minus[i].add(s, a[i]);
        sa_minus[i].constant = -v[i];
        sa_plus[i].add(s, a[i]);
        sa_plus[i].constant = v[i];
    }
    append_cone_membership(b, cone, sa_minus);
    append_cone_membership(b, cone, sa_plus);
    b.add_objective(s, 1.0);
    return lp::solve(b.build(), {tol_lp}).status == lp::Status::Optimal;
}

bool directed_by_lp(const ConeSpec& cone, double tol_lp) {
    const int n = cone.dim;
    for (int i = 0; i < n; ++i) {
        lp::Builder b;
        const auto p = b.add_vars(n);
        const auto q = b.add_vars(n);
        append_cone_membership(b, cone, affine_from_vars(p));
        append_cone_membership(b, cone, affine_from_vars(q));
        for (int k = 0; k < n; ++k) {
            lp::Builder::Expr e;
            e.add(p[k], 1.0).add(q[k], -1.0);
            e.constant = -(k == i ? 1.0 : 0.0);
            b.add_eq(e);
        }
        if (lp::solve(b.build(), {tol_lp}).status != lp::Status::Optimal)
            return false;
    }
    return true;
}

} // namespace

// --- ConeSpec ---------------------------------------------------------------

ConeSpec ConeSpec::orthant(int dim) {
    if (dim <= 0) throw ArgumentError("cone dimension must be positive");
    ConeSpec c;
    c.kind = Kind::Orthant;
    c.dim = dim;
    return c;
}

ConeSpec ConeSpec::transformed_orthant(Mat transform, double tol) {
    if (transform.rows != transform.cols || transform.rows == 0)
        throw ArgumentError("transform must be square");
    if (std::fabs(determinant(transform)) < tol)
        throw ArgumentError("transform must be invertible");
    ConeSpec c;
    c.kind = Kind::TransformedOrthant;
    c.dim = transform.rows;
    c.matrix = std::move(transform);
    return c;
}

ConeSpec ConeSpec::polyhedral(Mat inequalities) {
    if (inequalities.rows == 0 || inequalities.cols == 0)
        throw ArgumentError("polyhedral cone needs a nonempty inequality matrix");
    ConeSpec c;
    c.kind = Kind::Polyhedral;
    c.dim = inequalities.cols;
    c.matrix = std::move(inequalities);
    return c;
}

ConeSpec ConeSpec::rays(Mat generator_columns) {
    if (generator_columns.rows == 0 || generator_columns.cols == 0)
        throw ArgumentError("ray cone needs at least one generator");
    ConeSpec c;
    c.kind = Kind::Rays;
    c.dim = generator_columns.rows;
    c.matrix = std::move(generator_columns);
    return c;
}

bool ConeSpec::simplicial() const {
    return kind == Kind::Orthant || kind == Kind::TransformedOrthant;
}

std::optional<Mat> ConeSpec::inequality_rows() const {
    switch (kind) {
        case Kind::Orthant: return Mat::identity(dim);
        case Kind::TransformedOrthant:
        case Kind::Polyhedral: return matrix;
        case Kind::Rays: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Mat> ConeSpec::generators() const {
    switch (kind) {
        case Kind::Orthant: return Mat::identity(dim);
        case Kind::TransformedOrthant: return inverse(matrix);
        case Kind::Polyhedral:
            if (matrix.rows == matrix.cols) {
                if (auto inv = inverse(matrix)) return inv;
            }
            return std::nullopt;
        case Kind::Rays: return matrix;
    }
    return std::nullopt;
}

// --- NormSpec ---------------------------------------------------------------

NormSpec NormSpec::weighted_l1(Vec weights) {
    NormSpec n;
    n.kind = Kind::WeightedL1;
    n.weights = std::move(weights);
    return n;
}

NormSpec NormSpec::sup() {
    NormSpec n;
    n.kind = Kind::Sup;
    return n;
}

NormSpec NormSpec::order_unit(Vec unit) {
    NormSpec n;
    n.kind = Kind::OrderUnit;
    n.unit = std::move(unit);
    return n;
}

NormSpec NormSpec::inf_sum(SpacePtr left, SpacePtr right, Mat left_embedding,
                           Mat right_embedding) {
    NormSpec n;
    n.kind = Kind::InfSum;
    n.left = std::move(left);
    n.right = std::move(right);
    n.left_embedding = std::move(left_embedding);
    n.right_embedding = std::move(right_embedding);
    return n;
}

NormSpec NormSpec::quotient(SpacePtr source, Mat map) {
    NormSpec n;
    n.kind = Kind::Quotient;
    n.source = std::move(source);
    n.map = std::move(map);
    return n;
}

// --- OrderedSpace -----------------------------------------------------------

SpacePtr OrderedSpace::make(std::string id, ConeSpec cone, NormSpec norm,
                            const SpaceOptions& opts) {
    auto space = std::make_shared<OrderedSpace>();
    space->id = std::move(id);
    space->dim = cone.dim;
    space->tol_cone = opts.tol_cone;
    space->tol_lp = opts.tol_lp;

    switch (norm.kind) {
        case NormSpec::Kind::WeightedL1:
            if (static_cast<int>(norm.weights.size()) != space->dim)
                throw ArgumentError("weight vector length mismatch");
            for (double w : norm.weights)
                if (!(w > 0.0)) throw ArgumentError("weights must be strictly positive");
            break;
        case NormSpec::Kind::Sup:
            break;
        case NormSpec::Kind::OrderUnit: {
            if (static_cast<int>(norm.unit.size()) != space->dim)
                throw ArgumentError("order unit length mismatch");
            std::vector<Vec> probes = opts.order_unit_check_vectors;
            if (probes.empty()) {
                for (int i = 0; i < space->dim; ++i) {
                    Vec e(space->dim, 0.0);
                    e[i] = 1.0;
                    probes.push_back(std::move(e));
                }
            }
            for (const Vec& v : probes)
                if (!order_unit_dominates(cone, norm.unit, v, opts.tol_lp))
                    throw ArgumentError("element is not an order unit of the space");
            break;
        }
        case NormSpec::Kind::InfSum: {
            if (!norm.left || !norm.right)
                throw ArgumentError("inf-sum norm needs both summands");
            const Mat& e1 = norm.left_embedding;
            const Mat& e2 = norm.right_embedding;
            if (e1.rows != space->dim || e2.rows != space->dim)
                throw ArgumentError("inconsistent ambient dimensions");
            if (e1.cols != norm.left->dim || e2.cols != norm.right->dim)
                throw ArgumentError("embedding does not match summand dimension");
            if (rank(e1) != e1.cols || rank(e2) != e2.cols)
                throw ArgumentError("embeddings must be injective");
            break;
        }
        case NormSpec::Kind::Quotient:
            if (!norm.source) throw ArgumentError("quotient norm needs a source space");
            if (norm.map.rows != space->dim || norm.map.cols != norm.source->dim)
                throw ArgumentError("quotient map dimension mismatch");
            break;
    }
    space->norm = std::move(norm);

    bool directed = true;
    if (opts.skip_directed_check || cone.simplicial()) {
        // Simplicial cones are generating by invertibility.
    } else {
        directed = directed_by_lp(cone, opts.tol_lp);
    }
    if (!directed && !opts.allow_non_directed)
        throw OrderError("cone is not generating; pass allow_non_directed for negative tests");
    space->directed = directed;
    space->cone = std::move(cone);
    return space;
}

Vector make_vector(const OrderedSpace& space, Vec coords) {
    if (static_cast<int>(coords.size()) != space.dim)
        throw CarrierError("vector length does not match carrier dimension");
    return Vector{space.id, std::move(coords)};
}

// --- order and norm queries -------------------------------------------------

bool cone_contains(const ConeSpec& cone, const Vec& x, double tol) {
    if (static_cast<int>(x.size()) != cone.dim)
        throw CarrierError("vector length does not match cone dimension");
    if (auto rows = cone.inequality_rows()) {
        const Vec v = matvec(*rows, x);
        for (double r : v)
            if (r < -tol) return false;
        return true;
    }
    // Ray cone: membership is an LP feasibility question.
    lp::Builder b;
    const auto lambda = b.add_vars(cone.matrix.cols, 0.0, lp::kInf);
    for (int i = 0; i < cone.dim; ++i) {
        lp::Builder::Expr e;
        for (int j = 0; j < cone.matrix.cols; ++j) e.add(lambda[j], cone.matrix.at(i, j));
        e.constant = -x[i];
        b.add_eq(e);
    }
    return lp::solve(b.build(), {tol}).status == lp::Status::Optimal;
}

bool cone_contains(const OrderedSpace& space, const Vector& x) {
    check_carrier(space, x);
    return cone_contains(space.cone, x.coords, space.tol_cone);
}

bool leq(const OrderedSpace& space, const Vector& x, const Vector& y) {
    check_carrier(space, x);
    check_carrier(space, y);
    return cone_contains(space.cone, sub(y.coords, x.coords), space.tol_cone);
}

double norm_value(const OrderedSpace& space, const Vec& coords) {
    if (static_cast<int>(coords.size()) != space.dim)
        throw CarrierError("vector length does not match carrier dimension");
    switch (space.norm.kind) {
        case NormSpec::Kind::WeightedL1:
            return l1_weighted(space.norm.weights, coords);
        case NormSpec::Kind::Sup:
            return linf_norm(coords);
        default:
            break;
    }
    lp::Builder b;
    append_norm_objective(b, space, affine_constant(coords));
    const auto sol = lp::solve(b.build(), {space.tol_lp});
    if (sol.status == lp::Status::Infeasible)
        throw NotInSpaceError("vector is not in the normed subspace of '" + space.id + "'");
    if (sol.status != lp::Status::Optimal)
        throw SolverError("norm program did not reach an optimum");
    // Attainment check: the reported infimum comes with a feasible witness.
    if (sol.max_residual > space.tol_lp * 10.0)
        throw SolverError("norm program witness exceeds the residual tolerance");
    return sol.objective;
}

double norm(const OrderedSpace& space, const Vector& x) {
    check_carrier(space, x);
    return norm_value(space, x.coords);
}

std::vector<Vec> dual_generators(const OrderedSpace& space) {
    const ConeSpec& cone = space.cone;
    Mat rows;
    switch (cone.kind) {
        case ConeSpec::Kind::Orthant:
            rows = Mat::identity(cone.dim);
            break;
        case ConeSpec::Kind::TransformedOrthant:
            rows = cone.matrix;
            break;
        case ConeSpec::Kind::Polyhedral:
            if (cone.matrix.rows != cone.matrix.cols ||
                std::fabs(determinant(cone.matrix)) < space.tol_cone)
                throw CapabilityError("dual generators need a simplicial cone");
            rows = cone.matrix;
            break;
        case ConeSpec::Kind::Rays:
            throw CapabilityError("dual generators need a simplicial cone");
    }
    std::vector<Vec> out;
    out.reserve(rows.rows);
    for (int i = 0; i < rows.rows; ++i) out.push_back(rows.row(i));
    return out;
}

GeneratingWitness generating_witness(const OrderedSpace& space, const Vec& e) {
    if (static_cast<int>(e.size()) != space.dim)
        throw CarrierError("vector length does not match carrier dimension");
    const int n = space.dim;
    lp::Builder b;
    const auto p = b.add_vars(n);
    const auto q = b.add_vars(n);
    append_cone_membership(b, space.cone, affine_from_vars(p));
    append_cone_membership(b, space.cone, affine_from_vars(q));
    for (int k = 0; k < n; ++k) {
        lp::Builder::Expr ex;
        ex.add(p[k], 1.0).add(q[k], -1.0);
        ex.constant = -e[k];
        b.add_eq(ex);
    }
    const auto sol = lp::solve(b.build(), {space.tol_lp});
    if (sol.status != lp::Status::Optimal)
        throw NoDominatorError("no cone decomposition exists; space not directed at this vector");
    GeneratingWitness w;
    w.p.assign(sol.point.begin(), sol.point.begin() + n);
    w.q.assign(sol.point.begin() + n, sol.point.begin() + 2 * n);
    w.residual = linf_norm(sub(sub(w.p, w.q), e));
    return w;
}

// --- space constructions ------------------------------------------------------

SpacePtr sum_space(std::string id, SpacePtr d1, SpacePtr d2, Mat embedding1,
                   Mat embedding2) {
    if (!d1 || !d2) throw ArgumentError("sum space needs both summands");
    if (embedding1.rows != embedding2.rows)
        throw ArgumentError("inconsistent ambient dimensions");
    const int n = embedding1.rows;

    ConeSpec cone;
    const bool identity_embeddings =
        embedding1.cols == n && embedding2.cols == n &&
        [&] {
            const Mat id_m = Mat::identity(n);
            return embedding1.data == id_m.data && embedding2.data == id_m.data;
        }();
    if (identity_embeddings && d1->cone.kind == d2->cone.kind &&
        d1->cone.matrix.data == d2->cone.matrix.data) {
        cone = d1->cone;
    } else {
        const auto g1 = d1->cone.generators();
        const auto g2 = d2->cone.generators();
        if (!g1 || !g2)
            throw CapabilityError("sum space needs enumerable cone generators");
        cone = ConeSpec::rays(hcat(matmul(embedding1, *g1), matmul(embedding2, *g2)));
    }

    Mat span1 = d1->span.empty() ? embedding1 : matmul(embedding1, d1->span);
    Mat span2 = d2->span.empty() ? embedding2 : matmul(embedding2, d2->span);

    SpaceOptions opts;
    opts.skip_directed_check = true;
    auto space = OrderedSpace::make(
        std::move(id), std::move(cone),
        NormSpec::inf_sum(d1, d2, std::move(embedding1), std::move(embedding2)), opts);
    auto mutable_space = std::const_pointer_cast<OrderedSpace>(space);
    mutable_space->directed = d1->directed && d2->directed;
    mutable_space->span = hcat(span1, span2);
    return space;
}

SpacePtr line_space(std::string id, const Vec& a, const Vec& x,
                    const ConeSpec& ambient_cone) {
    if (static_cast<int>(a.size()) != ambient_cone.dim ||
        static_cast<int>(x.size()) != ambient_cone.dim)
        throw CarrierError("vector length does not match ambient dimension");
    if (linf_norm(a) == 0.0) throw ArgumentError("order unit must be nonzero");
    if (!cone_contains(ambient_cone, sub(a, x)) ||
        !cone_contains(ambient_cone, add(a, x)))
        throw OrderError("line space requires -a <= x <= a in the ambient order");

    Mat span = Mat::from_rows({a, x});
    span = transpose(span);
    const bool parallel = rank(span) < 2;
    if (parallel) {
        Mat only_a(static_cast<int>(a.size()), 1);
        for (std::size_t i = 0; i < a.size(); ++i) only_a.at(static_cast<int>(i), 0) = a[i];
        span = std::move(only_a);
    }

    SpaceOptions opts;
    opts.skip_directed_check = true;
    opts.order_unit_check_vectors = {a, x};
    auto space = OrderedSpace::make(std::move(id), ambient_cone,
                                    NormSpec::order_unit(a), opts);
    auto mutable_space = std::const_pointer_cast<OrderedSpace>(space);
    mutable_space->span = std::move(span);
    return space;
}

SpacePtr image_space(std::string id, SpacePtr d, Mat map, ConeSpec target_cone) {
    if (!d) throw ArgumentError("image space needs a source space");
    if (map.cols != d->dim) throw ArgumentError("map does not match source dimension");
    if (map.rows != target_cone.dim)
        throw ArgumentError("map does not match target dimension");

    const auto gens = d->cone.generators();
    if (!gens)
        throw CapabilityError("image space needs enumerable source cone generators");
    for (int j = 0; j < gens->cols; ++j) {
        if (!cone_contains(target_cone, matvec(map, gens->col(j))))
            throw OrderError("map is not order preserving on the source cone generators");
    }

    Mat span = d->span.empty() ? map : matmul(map, d->span);
    const bool directed = d->directed;

    SpaceOptions opts;
    opts.skip_directed_check = true;
    auto space = OrderedSpace::make(std::move(id), std::move(target_cone),
                                    NormSpec::quotient(d, std::move(map)), opts);
    auto mutable_space = std::const_pointer_cast<OrderedSpace>(space);
    mutable_space->directed = directed;
    mutable_space->span = std::move(span);
    return space;
}

// --- LP assembly helpers ------------------------------------------------------

AffineVec affine_from_vars(const std::vector<int>& vars) {
    AffineVec out(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) out[i].add(vars[i], 1.0);
    return out;
}

AffineVec affine_constant(const Vec& x) {
    AffineVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i].constant = x[i];
    return out;
}

AffineVec affine_sub(const AffineVec& a, const AffineVec& b) {
    AffineVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i];
        out[i].constant -= b[i].constant;
        for (const auto& [var, coeff] : b[i].terms) out[i].add(var, -coeff);
    }
    return out;
}

AffineVec affine_add(const AffineVec& a, const AffineVec& b) {
    AffineVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i];
        out[i].constant += b[i].constant;
        for (const auto& [var, coeff] : b[i].terms) out[i].add(var, coeff);
    }
    return out;
}

void append_cone_membership(lp::Builder& b, const ConeSpec& cone, const AffineVec& expr) {
    if (static_cast<int>(expr.size()) != cone.dim)
        throw CarrierError("expression length does not match cone dimension");
    if (auto rows = cone.inequality_rows()) {
        for (int i = 0; i < rows->rows; ++i) b.add_ge(combine_rows(rows->row(i), expr));
        return;
    }
    const Mat& g = cone.matrix;
    const auto lambda = b.add_vars(g.cols, 0.0, lp::kInf);
    for (int i = 0; i < cone.dim; ++i) {
        lp::Builder::Expr e = expr[i];
        for (int j = 0; j < g.cols; ++j) e.add(lambda[j], -g.at(i, j));
        b.add_eq(e);
    }
}

void append_norm_objective(lp::Builder& b, const OrderedSpace& space,
                           const AffineVec& expr, double objective_scale) {
    if (static_cast<int>(expr.size()) != space.dim)
        throw CarrierError("expression length does not match space dimension");
    const NormSpec& n = space.norm;
    switch (n.kind) {
        case NormSpec::Kind::WeightedL1: {
            const auto p = b.add_vars(space.dim, 0.0, lp::kInf);
            const auto q = b.add_vars(space.dim, 0.0, lp::kInf);
            for (int i = 0; i < space.dim; ++i) {
                lp::Builder::Expr e = expr[i];
                e.add(p[i], -1.0).add(q[i], 1.0);
                b.add_eq(e);
                b.add_objective(p[i], objective_scale * n.weights[i]);
                b.add_objective(q[i], objective_scale * n.weights[i]);
            }
            break;
        }
        case NormSpec::Kind::Sup: {
            const int t = b.add_var(0.0, lp::kInf);
            for (int i = 0; i < space.dim; ++i) {
                lp::Builder::Expr hi;
                hi.add(t, 1.0);
                hi.constant = -expr[i].constant;
                for (const auto& [var, coeff] : expr[i].terms) hi.add(var, -coeff);
                b.add_ge(hi);
                lp::Builder::Expr lo = expr[i];
                lo.add(t, 1.0);
                b.add_ge(lo);
            }
            b.add_objective(t, objective_scale);
            break;
        }
        case NormSpec::Kind::OrderUnit: {
            const int s = b.add_var(0.0, lp::kInf);
            AffineVec sa(space.dim);
            for (int i = 0; i < space.dim; ++i) sa[i].add(s, n.unit[i]);
            append_cone_membership(b, space.cone, affine_sub(sa, expr));
            append_cone_membership(b, space.cone, affine_add(sa, expr));
            b.add_objective(s, objective_scale);
            break;
        }
        case NormSpec::Kind::InfSum: {
            const auto u = b.add_vars(n.left->dim);
            const auto v = b.add_vars(n.right->dim);
            for (int i = 0; i < space.dim; ++i) {
                lp::Builder::Expr e = expr[i];
                for (int j = 0; j < n.left->dim; ++j)
                    e.add(u[j], -n.left_embedding.at(i, j));
                for (int j = 0; j < n.right->dim; ++j)
                    e.add(v[j], -n.right_embedding.at(i, j));
                b.add_eq(e);
            }
            append_norm_objective(b, *n.left, affine_from_vars(u), objective_scale);
            append_norm_objective(b, *n.right, affine_from_vars(v), objective_scale);
            break;
        }
        case NormSpec::Kind::Quotient: {
            const auto y = b.add_vars(n.source->dim);
            for (int i = 0; i < space.dim; ++i) {
                lp::Builder::Expr e = expr[i];
                for (int j = 0; j < n.source->dim; ++j) e.add(y[j], -n.map.at(i, j));
                b.add_eq(e);
            }
            append_norm_objective(b, *n.source, affine_from_vars(y), objective_scale);
            break;
        }
    }
}

// --- JSON ----------------------------------------------------------------------

nlohmann::json mat_to_json(const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(const nlohmann::json& j) {
    std::vector<Vec> rows;
    for (const auto& row : j) rows.push_back(row.get<Vec>());
    return Mat::from_rows(rows);
}

nlohmann::json cone_to_json(const ConeSpec& cone) {
    nlohmann::json j;
    switch (cone.kind) {
        case ConeSpec::Kind::Orthant:
            j["kind"] = "orthant";
            break;
        case ConeSpec::Kind::TransformedOrthant:
            j["kind"] = "transformed_orthant";
            j["matrix"] = mat_to_json(cone.matrix);
            break;
        case ConeSpec::Kind::Polyhedral:
            j["kind"] = "polyhedral";
            j["matrix"] = mat_to_json(cone.matrix);
            break;
        case ConeSpec::Kind::Rays:
            j["kind"] = "rays";
            j["generators"] = mat_to_json(cone.matrix);
            break;
    }
    j["dim"] = cone.dim;
    return j;
}

ConeSpec cone_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "orthant") return ConeSpec::orthant(j.at("dim").get<int>());
    if (kind == "transformed_orthant")
        return ConeSpec::transformed_orthant(mat_from_json(j.at("matrix")));
    if (kind == "polyhedral") return ConeSpec::polyhedral(mat_from_json(j.at("matrix")));
    if (kind == "rays") return ConeSpec::rays(mat_from_json(j.at("generators")));
    throw ArgumentError("unknown cone kind '" + kind + "'");
}

namespace {

nlohmann::json norm_to_json(const NormSpec& n) {
    nlohmann::json j;
    switch (n.kind) {
        case NormSpec::Kind::WeightedL1:
            j["kind"] = "weighted_l1";
            j["weights"] = n.weights;
            break;
        case NormSpec::Kind::Sup:
            j["kind"] = "sup";
            break;
        case NormSpec::Kind::OrderUnit:
            j["kind"] = "order_unit";
            j["unit"] = n.unit;
            break;
        case NormSpec::Kind::InfSum:
            j["kind"] = "inf_sum";
            j["left"] = space_to_json(*n.left);
            j["right"] = space_to_json(*n.right);
            j["left_embedding"] = mat_to_json(n.left_embedding);
            j["right_embedding"] = mat_to_json(n.right_embedding);
            break;
        case NormSpec::Kind::Quotient:
            j["kind"] = "quotient";
            j["source"] = space_to_json(*n.source);
            j["map"] = mat_to_json(n.map);
            break;
    }
    return j;
}

NormSpec norm_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "weighted_l1") return NormSpec::weighted_l1(j.at("weights").get<Vec>());
    if (kind == "sup") return NormSpec::sup();
    if (kind == "order_unit") return NormSpec::order_unit(j.at("unit").get<Vec>());
    if (kind == "inf_sum")
        return NormSpec::inf_sum(space_from_json(j.at("left")), space_from_json(j.at("right")),
                                 mat_from_json(j.at("left_embedding")),
                                 mat_from_json(j.at("right_embedding")));
    if (kind == "quotient")
        return NormSpec::quotient(space_from_json(j.at("source")), mat_from_json(j.at("map")));
    throw ArgumentError("unknown norm kind '" + kind + "'");
}

} // namespace

nlohmann::json space_to_json(const OrderedSpace& space) {
    nlohmann::json j;
    j["id"] = space.id;
    j["dim"] = space.dim;
    j["cone"] = cone_to_json(space.cone);
    j["norm"] = norm_to_json(space.norm);
    j["directed"] = space.directed;
    if (!space.span.empty()) j["span"] = mat_to_json(space.span);
    return j;
}

SpacePtr space_from_json(const nlohmann::json& j, const SpaceOptions& opts) {
    ConeSpec cone = cone_from_json(j.at("cone"));
    if (j.contains("dim") && j.at("dim").get<int>() != cone.dim)
        throw ArgumentError("space dim does not match cone dim");
    NormSpec norm = norm_from_json(j.at("norm"));

    SpaceOptions local = opts;
    Mat span;
    if (j.contains("span")) {
        span = mat_from_json(j.at("span"));
        if (norm.kind == NormSpec::Kind::OrderUnit && local.order_unit_check_vectors.empty())
            for (int c = 0; c < span.cols; ++c)
                local.order_unit_check_vectors.push_back(span.col(c));
    }
    if (j.contains("directed")) {
        local.skip_directed_check = true;
        if (!j.at("directed").get<bool>()) local.allow_non_directed = true;
    }
    auto space = OrderedSpace::make(j.at("id").get<std::string>(), std::move(cone),
                                    std::move(norm), local);
    auto mutable_space = std::const_pointer_cast<OrderedSpace>(space);
    if (j.contains("directed")) mutable_space->directed = j.at("directed").get<bool>();
    if (!span.empty()) mutable_space->span = std::move(span);
    return space;
}

} // namespace orba
