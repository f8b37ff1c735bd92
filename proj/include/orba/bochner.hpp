#pragma once

#include "orba/cone_analysis.hpp"
#include "orba/measure.hpp"
#include "orba/space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace orba {

struct BochnerResult {
    Vector value;
    double error_bound = 0.0; // tail bound on truncated spaces, 0 otherwise
};

/// Bochner integral. On finite spaces this equals the elementary integral;
/// on truncated spaces it is the partial sum with the certified tail as
/// error bound.
BochnerResult bochner_integral(const OrderedSpace& carrier, const IntegrableFunction& f);

/// Integrates T o f in the target space and asserts it equals T applied to
/// the integral of f. T must be order preserving on the source cone
/// generators.
BochnerResult pushforward_integrate(const Mat& map, const OrderedSpace& source,
                                    const OrderedSpace& target, const IntegrableFunction& f,
                                    double tol_num = kToleranceNum);

/// Dominating pair: -g <= f <= g atomwise with a certified l1 bound.
struct DominatedPair {
    IntegrableFunction f;
    IntegrableFunction g;
    double epsilon = 0.0;
    double c_sampled = 0.0; // the scanned dominating constant used in the bound
    double c_used = 0.0;    // c_sampled inflated by the safety factor
    double per_set_slack = 0.0;
};

struct DominateOptions {
    std::optional<double> c_sampled; // when absent, scanned here
    double safety_factor = 1.05;
    int scan_samples = 64;
    std::uint64_t seed = 42;
};

/// Per distinct value, a minimal dominator with the per-set slack allowance
/// epsilon/kappa (kappa = mass of the support).
DominatedPair simple_dominate(const OrderedSpace& carrier, const IntegrableFunction& f,
                              double epsilon, const DominateOptions& opts = {});

/// Telescoping construction on truncated spaces: simple approximants along
/// the dyadic slack schedule, each increment dominated separately.
DominatedPair bochner_dominate(const OrderedSpace& carrier, const IntegrableFunction& f,
                               double epsilon, const DominateOptions& opts = {});

/// True when alpha(candidate) = sum w_i alpha(f_i) for every functional.
bool pettis_verify(const OrderedSpace& carrier, const IntegrableFunction& f,
                   const std::vector<Vec>& functionals, const Vector& candidate,
                   double tol_num = kToleranceNum);

/// Verifies the Bochner integral against the dual functionals and asserts
/// it is the unique such vector (simplicial carriers).
bool pettis_check(const OrderedSpace& carrier, const IntegrableFunction& f,
                  double tol_num = kToleranceNum);

} // namespace orba
