#pragma once

#include "orba/bochner.hpp"
#include "orba/measure.hpp"
#include "orba/space.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace orba {

/// Köthe-style function norm over an atomic measure space: either a
/// weighted-L1 norm or the merged infimum of two function norms.
class FunctionNorm {
public:
    enum class Kind { WeightedL1Koethe, Merged };

    static FunctionNorm weighted(Vec weight);
    static FunctionNorm merged(FunctionNorm rho1, FunctionNorm rho2);

    Kind kind() const { return kind_; }

    /// Closed-form evaluation. For merged weighted-L1 pairs this is the
    /// pointwise-minimum weight norm.
    double evaluate(const MeasureSpace& nu, const Vec& f) const;

    /// Reference evaluation of the merged infimum by grid search over the
    /// splitting g + h >= |f| with local refinement. Kept independent of the
    /// closed form so the two routes can be compared.
    double evaluate_grid(const MeasureSpace& nu, const Vec& f, double step = 1e-3) const;

    /// Pointwise weight realizing the closed form.
    Vec effective_weight() const;

private:
    Kind kind_ = Kind::WeightedL1Koethe;
    Vec weight_;
    std::shared_ptr<const FunctionNorm> rho1_, rho2_;
};

double koethe_norm(const Vec& w, const MeasureSpace& nu, const Vec& f);

/// Merged norm of two weighted-L1 function norms, closed form.
double merged_norm(const Vec& w1, const Vec& w2, const MeasureSpace& nu, const Vec& f);

/// Brute-force grid evaluation of the merged infimum.
double merged_norm_grid(const Vec& w1, const Vec& w2, const MeasureSpace& nu, const Vec& f,
                        double step = 1e-3);

/// Minimal lambda with |f| <= lambda * u; the ideal norm of the lattice E_u.
double principal_ideal_norm(const Vec& u, const Vec& f);

/// A family of ordered Banach subspaces with a join operation. Member
/// registries are append-only; reads take a snapshot.
class Cover {
public:
    enum class Kind { OrderedSubspaces, PrincipalIdeals, KoetheWeights };

    static Cover ordered_subspaces(SpacePtr ambient, std::vector<SpacePtr> members);
    static Cover principal_ideals(int ambient_dim, std::vector<Vec> units,
                                  double off_support_delta = 1e-9);
    static Cover koethe_weights(MeasureSpace nu, std::vector<Vec> weights,
                                Vec reference_summable = {});

    Kind kind() const { return kind_; }
    int ambient_dim() const { return ambient_dim_; }

    std::vector<std::string> member_ids() const;
    SpacePtr member_space(const std::string& id) const;
    /// Unit or weight vector backing a member (principal-ideal and Köthe
    /// covers).
    Vec member_data(const std::string& id) const;

    bool member_contains(const std::string& id, const Vec& value) const;

    /// Returns a member containing every value, constructing and
    /// registering one when none is registered.
    std::string assign_member(const std::vector<Vec>& values) const;

    /// Join member with continuous inclusions from both arguments.
    std::string join(const std::string& id1, const std::string& id2) const;

    struct UIntegral {
        BochnerResult result;
        std::string member;
        std::string alt_member;
        std::string join_member;
        double max_deviation = 0.0;
        nlohmann::json transcript;
    };

    /// Assigns a member, Bochner-integrates there, and cross-checks the
    /// value in an alternative member and in their join.
    UIntegral u_integral(const MeasureSpace& mu, const std::vector<Vec>& values,
                         std::optional<double> tail_norm_bound = std::nullopt) const;

    nlohmann::json to_json() const;
    static Cover from_json(const nlohmann::json& j);

private:
    struct Member {
        std::string id;
        SpacePtr space;
        Vec data; // unit (principal ideals) or weight (Köthe)
    };

    // Append-only registry with snapshot reads; shared so Cover keeps value
    // semantics.
    struct Registry {
        std::mutex mutex;
        std::vector<Member> members;
        int next_index = 0;
    };

    Cover() : registry_(std::make_shared<Registry>()) {}

    std::vector<Member> snapshot() const;
    std::string register_member(Member m) const;
    std::string fresh_id(const char* prefix) const;
    SpacePtr build_principal_ideal_space(const std::string& id, const Vec& unit) const;
    SpacePtr build_koethe_space(const std::string& id, const Vec& weight) const;

    Kind kind_ = Kind::OrderedSubspaces;
    int ambient_dim_ = 0;
    SpacePtr ambient_; // OrderedSubspaces
    MeasureSpace nu_;  // KoetheWeights
    Vec reference_summable_;
    double delta_ = 1e-9;
    std::shared_ptr<Registry> registry_;
};

} // namespace orba
