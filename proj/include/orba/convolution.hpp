#pragma once

#include "orba/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace orba {

/// Finite group given by its Cayley table. Associativity is verified
/// exhaustively at small order; identity and inverses exactly.
struct FiniteGroup {
    std::vector<std::vector<int>> table; // table[a][b] = a*b
    int identity = 0;
    std::vector<int> inverse;

    int order() const { return static_cast<int>(table.size()); }

    static FiniteGroup cyclic(int n);
    static FiniteGroup from_table(std::vector<std::vector<int>> table);
};

/// The integers under addition, observed through the window [-W, W] with
/// the compact chain K_n = [-n, n] (K_0 = {0}).
struct IntegerGroup {
    int window = 0;
};

class Group {
public:
    static Group finite(FiniteGroup g) { return Group(std::move(g)); }
    static Group integers(int window);

    bool is_integer() const { return std::holds_alternative<IntegerGroup>(g_); }
    const IntegerGroup& integers_data() const { return std::get<IntegerGroup>(g_); }
    const FiniteGroup& finite_data() const { return std::get<FiniteGroup>(g_); }

    /// Number of evaluation points: window grid size or group order.
    int carrier_size() const;
    /// Grid point for a coordinate index (identity map for finite groups).
    int element_at(int index) const;
    /// Coordinate index of an element.
    int index_of(int element) const;

private:
    explicit Group(FiniteGroup g) : g_(std::move(g)) {}
    explicit Group(IntegerGroup g) : g_(g) {}
    std::variant<FiniteGroup, IntegerGroup> g_;
};

/// Polynomial growth bound |f(n)| <= coeff * (1 + |n|)^degree, used to bound
/// suprema over chain sets beyond the stored range.
struct Growth {
    double coeff = 0.0;
    int degree = 0;
};

/// Real function on the group. For the integer group, values are stored on
/// [-range, range]; the growth descriptor extends sup bounds beyond it.
struct GroupFunction {
    Vec values;
    int range = 0; // integer group only
    std::optional<Growth> growth;

    double at_int(int n) const;     // integer-group evaluation
    double at_index(int i) const { return values[i]; } // finite-group evaluation
};

GroupFunction make_integer_function(int range, Vec values,
                                    std::optional<Growth> growth = std::nullopt);
GroupFunction make_finite_function(const FiniteGroup& g, Vec values);

/// Left translation (L_x f)(y) = f(x^-1 y). For the integer group the
/// result is stored on [-out_range, out_range]; the input must cover it.
GroupFunction translate(const Group& g, const GroupFunction& f, int x,
                        std::optional<int> out_range = std::nullopt);

/// Weight construction: chain-indexed coefficients alpha_n over discrete
/// 0/1 cutoff functions, with u and v the translation-domination envelopes.
struct WeightFunctions {
    GroupFunction w; // on the window / all elements
    Vec u, v;        // indexed like the carrier grid
    double u_at(const Group& g, int x) const;
};

WeightFunctions weight_builder(const Group& g, const GroupFunction& f);

/// Finitely supported measure; on the integer group the support must lie
/// inside the window.
struct GroupMeasure {
    std::vector<std::pair<int, double>> support; // (element, mass)
};

GroupFunction convolve_direct(const Group& g, const GroupMeasure& mu, const GroupFunction& f);

struct ConvolveCheck {
    GroupFunction result;
    double max_deviation = 0.0; // against the direct formula
    nlohmann::json transcript;
};

/// Convolution as an integral: the translate-valued map is integrated in
/// the principal ideal of the constructed weight, then compared pointwise
/// with the direct formula.
ConvolveCheck convolve_via_integral(const Group& g, const GroupMeasure& mu,
                                    const GroupFunction& f, double tol_num = 1e-8);

nlohmann::json group_function_to_json(const Group& g, const GroupFunction& f);
GroupFunction group_function_from_json(const Group& g, const nlohmann::json& j);
nlohmann::json group_measure_to_json(const GroupMeasure& mu);
GroupMeasure group_measure_from_json(const nlohmann::json& j);

} // namespace orba
