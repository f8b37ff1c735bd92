#include "orba/measure.hpp"

#include "orba/errors.hpp"

#include <utility>

namespace orba {

namespace {

void validate_atoms(const std::vector<Atom>& atoms) {
    if (atoms.empty()) throw ArgumentError("measure space needs at least one atom");
    double total = 0.0;
    for (const Atom& a : atoms) {
        if (!(a.weight > 0.0)) throw ArgumentError("atom weights must be strictly positive");
        total += a.weight;
    }
    if (!(total > 0.0)) throw ArgumentError("total mass must be positive");
}

void check_function(const OrderedSpace& carrier, const IntegrableFunction& f) {
    if (f.carrier != carrier.id)
        throw CarrierError("function carrier '" + f.carrier + "' used with space '" +
                           carrier.id + "'");
    if (f.values.size() != f.space.atoms.size())
        throw CarrierError("value count does not match atom count");
    for (const Vec& v : f.values)
        if (static_cast<int>(v.size()) != carrier.dim)
            throw CarrierError("value length does not match carrier dimension");
}

} // namespace

MeasureSpace MeasureSpace::finite(std::vector<Atom> atoms) {
    validate_atoms(atoms);
    MeasureSpace m;
    m.kind = Kind::Finite;
    m.atoms = std::move(atoms);
    return m;
}

MeasureSpace MeasureSpace::truncated_n(std::vector<Atom> atoms, double tail_bound) {
    validate_atoms(atoms);
    if (tail_bound < 0.0) throw ArgumentError("tail bound must be nonnegative");
    MeasureSpace m;
    m.kind = Kind::TruncatedN;
    m.atoms = std::move(atoms);
    m.tail_bound = tail_bound;
    return m;
}

double MeasureSpace::total_mass() const {
    double total = 0.0;
    for (const Atom& a : atoms) total += a.weight;
    return total;
}

double IntegrableFunction::effective_tail_bound() const {
    if (space.kind != MeasureSpace::Kind::TruncatedN) return 0.0;
    return tail_norm_bound.value_or(space.tail_bound);
}

IntegrableFunction make_function(const MeasureSpace& space, const OrderedSpace& carrier,
                                 std::vector<Vec> values,
                                 std::optional<double> tail_norm_bound) {
    IntegrableFunction f;
    f.space = space;
    f.carrier = carrier.id;
    f.values = std::move(values);
    f.tail_norm_bound = tail_norm_bound;
    check_function(carrier, f);
    return f;
}

Vector phi_integral(const OrderedSpace& carrier, const IntegrableFunction& f) {
    check_function(carrier, f);
    if (f.space.kind != MeasureSpace::Kind::Finite)
        throw NotIntegrableError("the elementary integral applies to finite (simple) functions");
    Vec out(carrier.dim, 0.0);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        out = add(out, scale(f.space.atoms[i].weight, f.values[i]));
    return Vector{carrier.id, std::move(out)};
}

L1Norm l1_norm(const OrderedSpace& carrier, const IntegrableFunction& f) {
    check_function(carrier, f);
    L1Norm n;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        n.value += f.space.atoms[i].weight * norm_value(carrier, f.values[i]);
    n.uncertainty = f.effective_tail_bound();
    return n;
}

bool ae_leq(const OrderedSpace& carrier, const IntegrableFunction& f,
            const IntegrableFunction& g) {
    check_function(carrier, f);
    check_function(carrier, g);
    if (f.space.atoms.size() != g.space.atoms.size())
        throw CarrierError("functions live on different measure spaces");
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (f.space.atoms[i].label != g.space.atoms[i].label ||
            f.space.atoms[i].weight != g.space.atoms[i].weight)
            throw CarrierError("functions live on different measure spaces");
        if (!cone_contains(carrier.cone, sub(g.values[i], f.values[i]), carrier.tol_cone))
            return false;
    }
    return true;
}

nlohmann::json measure_to_json(const MeasureSpace& m) {
    nlohmann::json j;
    nlohmann::json atoms = nlohmann::json::array();
    for (const Atom& a : m.atoms) atoms.push_back({{"label", a.label}, {"weight", a.weight}});
    j["atoms"] = std::move(atoms);
    if (m.kind == MeasureSpace::Kind::TruncatedN) {
        j["kind"] = "truncated_n";
        j["tail_bound"] = m.tail_bound;
    } else {
        j["kind"] = "finite";
    }
    return j;
}

MeasureSpace measure_from_json(const nlohmann::json& j) {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms"))
        atoms.push_back({a.at("label").get<std::string>(), a.at("weight").get<double>()});
    const std::string kind = j.value("kind", "finite");
    if (kind == "finite") return MeasureSpace::finite(std::move(atoms));
    if (kind == "truncated_n")
        return MeasureSpace::truncated_n(std::move(atoms), j.at("tail_bound").get<double>());
    throw ArgumentError("unknown measure kind '" + kind + "'");
}

nlohmann::json function_to_json(const IntegrableFunction& f) {
    nlohmann::json j;
    j["measure"] = measure_to_json(f.space);
    j["carrier"] = f.carrier;
    j["values"] = f.values;
    if (f.tail_norm_bound) j["tail_norm_bound"] = *f.tail_norm_bound;
    return j;
}

IntegrableFunction function_from_json(const nlohmann::json& j, const OrderedSpace& carrier) {
    // Either nested under "measure" or flat with "atoms" at the top level.
    MeasureSpace m =
        j.contains("measure") ? measure_from_json(j.at("measure")) : measure_from_json(j);
    std::vector<Vec> values;
    for (const auto& v : j.at("values")) values.push_back(v.get<Vec>());
    std::optional<double> tail;
    if (j.contains("tail_norm_bound")) tail = j.at("tail_norm_bound").get<double>();
    if (j.at("carrier").get<std::string>() != carrier.id)
        throw CarrierError("function carrier does not match the supplied space");
    return make_function(m, carrier, std::move(values), tail);
}

} // namespace orba
