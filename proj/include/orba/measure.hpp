#pragma once

#include "orba/space.hpp"

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace orba {

struct Atom {
    std::string label;
    double weight = 0.0;
};

/// Finite list of weighted atoms; TruncatedN additionally certifies a bound
/// on the omitted tail (tail mass times function norm), supplied by the
/// caller.
struct MeasureSpace {
    enum class Kind { Finite, TruncatedN };

    Kind kind = Kind::Finite;
    std::vector<Atom> atoms;
    double tail_bound = 0.0;

    static MeasureSpace finite(std::vector<Atom> atoms);
    static MeasureSpace truncated_n(std::vector<Atom> atoms, double tail_bound);

    double total_mass() const;
    int size() const { return static_cast<int>(atoms.size()); }
};

/// Per-atom values in a designated carrier space. On Finite spaces every
/// function is simple.
struct IntegrableFunction {
    MeasureSpace space;
    std::string carrier;
    std::vector<Vec> values;
    std::optional<double> tail_norm_bound; // overrides the measure's bound

    double effective_tail_bound() const;
};

IntegrableFunction make_function(const MeasureSpace& space, const OrderedSpace& carrier,
                                 std::vector<Vec> values,
                                 std::optional<double> tail_norm_bound = std::nullopt);

/// Elementary integral of a simple function: sum of weight * value.
Vector phi_integral(const OrderedSpace& carrier, const IntegrableFunction& f);

struct L1Norm {
    double value = 0.0;
    double uncertainty = 0.0; // declared tail bound on TruncatedN
};

L1Norm l1_norm(const OrderedSpace& carrier, const IntegrableFunction& f);

/// Atomwise order comparison; atoms carry positive mass, so almost
/// everywhere means everywhere here.
bool ae_leq(const OrderedSpace& carrier, const IntegrableFunction& f,
            const IntegrableFunction& g);

nlohmann::json measure_to_json(const MeasureSpace& m);
MeasureSpace measure_from_json(const nlohmann::json& j);
nlohmann::json function_to_json(const IntegrableFunction& f);
IntegrableFunction function_from_json(const nlohmann::json& j, const OrderedSpace& carrier);

} // namespace orba
