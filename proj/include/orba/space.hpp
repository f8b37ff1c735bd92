#pragma once

#include "orba/linalg.hpp"
#include "orba/lp.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace orba {

/// Default tolerances; CLI flags and SpaceOptions can override them.
inline constexpr double kToleranceCone = 1e-9;
inline constexpr double kToleranceLp = 1e-9;
inline constexpr double kToleranceNum = 1e-8;

/// Closed convex cone described by an inequality system or by generators.
///
/// Orthant and TransformedOrthant are simplicial; Rays arises from sum
/// spaces, whose cone is generated by the embedded member cones.
struct ConeSpec {
    enum class Kind { Orthant, TransformedOrthant, Polyhedral, Rays };

    Kind kind = Kind::Orthant;
    int dim = 0;
    Mat matrix; // T (transform), A (inequalities), or G (generator columns)

    static ConeSpec orthant(int dim);
    static ConeSpec transformed_orthant(Mat transform, double tol = kToleranceCone);
    static ConeSpec polyhedral(Mat inequalities);
    static ConeSpec rays(Mat generator_columns);

    bool simplicial() const;
    /// Inequality rows R such that x in cone iff R x >= 0; nullopt for Rays.
    std::optional<Mat> inequality_rows() const;
    /// Generator columns; nullopt when not enumerable (tall Polyhedral).
    std::optional<Mat> generators() const;
};

struct OrderedSpace;
using SpacePtr = std::shared_ptr<const OrderedSpace>;

/// Norm descriptor. WeightedL1 and Sup evaluate directly; the remaining
/// variants are infima realized by the LP kernel.
struct NormSpec {
    enum class Kind { WeightedL1, Sup, OrderUnit, InfSum, Quotient };

    Kind kind = Kind::Sup;
    Vec weights;             // WeightedL1
    Vec unit;                // OrderUnit
    SpacePtr left, right;    // InfSum summands
    Mat left_embedding, right_embedding;
    SpacePtr source;         // Quotient source
    Mat map;                 // Quotient map

    static NormSpec weighted_l1(Vec weights);
    static NormSpec sup();
    static NormSpec order_unit(Vec unit);
    static NormSpec inf_sum(SpacePtr left, SpacePtr right,
                            Mat left_embedding, Mat right_embedding);
    static NormSpec quotient(SpacePtr source, Mat map);
};

struct SpaceOptions {
    bool allow_non_directed = false;
    /// When set, the order-unit feasibility check runs over these vectors
    /// instead of the coordinate basis (used by line spaces, whose unit only
    /// needs to dominate the span).
    std::vector<Vec> order_unit_check_vectors;
    bool skip_directed_check = false; // derived constructions know the answer
    double tol_cone = kToleranceCone;
    double tol_lp = kToleranceLp;
};

/// Immutable finite-dimensional ordered Banach space descriptor. `dim` is
/// the coordinate dimension; derived constructions may describe a proper
/// subspace of it, recorded in `span` (basis columns; empty = full space).
struct OrderedSpace {
    std::string id;
    int dim = 0;
    ConeSpec cone;
    NormSpec norm;
    bool directed = true;
    Mat span;
    double tol_cone = kToleranceCone;
    double tol_lp = kToleranceLp;

    static SpacePtr make(std::string id, ConeSpec cone, NormSpec norm,
                         const SpaceOptions& opts = {});
};

/// Dense coordinates tagged with their carrier space id.
struct Vector {
    std::string space;
    Vec coords;
};

Vector make_vector(const OrderedSpace& space, Vec coords);

// --- order and norm queries ---------------------------------------------

bool cone_contains(const ConeSpec& cone, const Vec& x, double tol = kToleranceCone);
bool cone_contains(const OrderedSpace& space, const Vector& x);
bool leq(const OrderedSpace& space, const Vector& x, const Vector& y);
double norm(const OrderedSpace& space, const Vector& x);
double norm_value(const OrderedSpace& space, const Vec& coords);

/// Functionals a_1..a_n with x <= y iff a_i(x) <= a_i(y) for all i.
/// Simplicial cones only.
std::vector<Vec> dual_generators(const OrderedSpace& space);

struct GeneratingWitness {
    Vec p, q;
    double residual;
};

/// Decomposes e = p - q with p, q in the cone. Throws when not directed.
GeneratingWitness generating_witness(const OrderedSpace& space, const Vec& e);

// --- space constructions --------------------------------------------------

/// Sum space D1 + D2 inside a common ambient coordinate space. The cone is
/// generated by the embedded member cones; the norm is the decomposition
/// infimum.
SpacePtr sum_space(std::string id, SpacePtr d1, SpacePtr d2,
                   Mat embedding1, Mat embedding2);

/// Two-dimensional (or one-dimensional when x is parallel to a) space
/// spanned by a and x, ordered by the ambient cone, normed by the order
/// unit a. Requires -a <= x <= a.
SpacePtr line_space(std::string id, const Vec& a, const Vec& x,
                    const ConeSpec& ambient_cone);

/// Image space T(D) with the quotient norm and the target order. T must be
/// order preserving on the cone generators of D. T(D+) may be a strict
/// subcone of the image cone; order queries use the target cone.
SpacePtr image_space(std::string id, SpacePtr d, Mat map, ConeSpec target_cone);

// --- LP assembly helpers shared with cone-analysis ------------------------

/// Affine coordinate expression over LP builder variables.
using AffineVec = std::vector<lp::Builder::Expr>;

AffineVec affine_from_vars(const std::vector<int>& vars);
AffineVec affine_constant(const Vec& x);
AffineVec affine_sub(const AffineVec& a, const AffineVec& b);
AffineVec affine_add(const AffineVec& a, const AffineVec& b);

/// Adds constraints forcing `expr` into the cone.
void append_cone_membership(lp::Builder& b, const ConeSpec& cone, const AffineVec& expr);

/// Adds variables/constraints and objective terms whose minimal total value
/// equals the norm of `expr` in `space`. Composes through InfSum/Quotient.
void append_norm_objective(lp::Builder& b, const OrderedSpace& space, const AffineVec& expr,
                           double objective_scale = 1.0);

// --- JSON ------------------------------------------------------------------

nlohmann::json cone_to_json(const ConeSpec& cone);
ConeSpec cone_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const OrderedSpace& space);
SpacePtr space_from_json(const nlohmann::json& j, const SpaceOptions& opts = {});

nlohmann::json mat_to_json(const Mat& m);
Mat mat_from_json(const nlohmann::json& j);

} // namespace orba
