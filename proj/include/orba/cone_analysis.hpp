#pragma once

#include "orba/rng.hpp"
#include "orba/space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

namespace orba {

/// Minimal dominating element: a in the cone with -a <= x <= a minimizing
/// the norm. `value` is the N-norm of x.
struct DominatorResult {
    Vector a;
    double value = 0.0;
    double residual = 0.0;
};

DominatorResult min_dominator(const OrderedSpace& space, const Vector& x);

/// N(x) = inf { ||a|| : a in cone, -a <= x <= a }.
double n_norm(const OrderedSpace& space, const Vector& x);

struct ScanOptions {
    int samples = 100;
    std::uint64_t seed = 42;
    std::vector<Vec> extra_probes; // deterministic witnesses added to the scan
    double tol_num = kToleranceNum;
};

struct DominatingScan {
    double c_lower = 0.0; // max over samples of N(x)/||x||
    Vector witness;
    bool exact = false;   // lattice / order-unit instances: the constant is 1 exactly
    bool below_one_flagged = false;
    int samples = 0;
    std::uint64_t seed = 0;
};

DominatingScan dominating_ratio_scan(const OrderedSpace& space, const ScanOptions& opts);

struct NormalityScan {
    double ratio = 0.0; // max over samples of ||x||/N(x), zero-N samples excluded
    Vector witness;
    int samples = 0;
    int excluded = 0;
    std::uint64_t seed = 0;
};

NormalityScan normality_ratio_scan(const OrderedSpace& space, const ScanOptions& opts);

/// Equivalent renorming rho = eps*N + ||.||; its dominating ratio is at most
/// (1+eps)^2 on samples.
class RenormedSpace {
public:
    RenormedSpace(SpacePtr base, double epsilon, double sampled_equivalence_constant);

    struct RhoValue {
        double value = 0.0;
        double n_part = 0.0;    // eps * N(x)
        double base_part = 0.0; // ||x||
    };

    RhoValue rho(const Vector& x) const;

    struct RhoDominator {
        Vector a;
        RhoValue rho_a;
        double residual = 0.0;
    };

    /// Minimizes rho(a) over cone elements a with -a <= x <= a.
    RhoDominator min_dominator(const Vector& x) const;

    /// Max over samples of rho(min dominator)/rho(x).
    DominatingScan dominating_ratio_scan(const ScanOptions& opts) const;

    const OrderedSpace& base() const { return *base_; }
    double epsilon() const { return epsilon_; }
    double sampled_equivalence_constant() const { return c_sampled_; }

private:
    SpacePtr base_;
    double epsilon_;
    double c_sampled_; // sampled C with N <= C*||.||
};

struct RenormOptions {
    int equivalence_scan_samples = 64;
    std::uint64_t seed = 42;
};

RenormedSpace renorm_eps(SpacePtr space, double epsilon, const RenormOptions& opts = {});

/// Draws a random vector inside the space's (sub)space, normalized to unit
/// norm; nullopt when the draw degenerates repeatedly.
std::optional<Vec> sample_unit_vector(const OrderedSpace& space, Sampler& rng);

/// JSON scan report: space id, samples, seed, C_lower, normality_ratio,
/// witness.
nlohmann::json scan_report_json(const OrderedSpace& space, const DominatingScan& dom,
                                const NormalityScan& nrm);

} // namespace orba
