#pragma once

#include "orba/linalg.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace orba::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Minimization program
///     min  objective . x
///     s.t. ge_matrix x >= ge_rhs
///          eq_matrix x == eq_rhs
///          lower <= x <= upper   (+-inf allowed; empty bounds mean free)
struct LinearProgram {
    Vec objective;
    Mat ge_matrix;
    Vec ge_rhs;
    Mat eq_matrix;
    Vec eq_rhs;
    Vec lower;
    Vec upper;

    int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    Vec point;              // original variable order, only valid when Optimal
    double objective = 0.0;
    double max_residual = 0.0;  // worst violation of any original constraint
    double dual_residual = 0.0; // worst negative reduced cost at termination
};

struct SolverOptions {
    double tol = 1e-9;        // feasibility / optimality tolerance
    double pivot_tol = 1e-12; // smallest admissible pivot magnitude
    int max_vars = 512;       // cap on standard-form variables
    int max_iters = 0;        // 0 = automatic cap
};

/// Dense two-phase simplex with Bland's rule. Deterministic for fixed input.
Solution solve(const LinearProgram& lp, const SolverOptions& opts = {});

/// Incremental program builder used by the norm/dominator formulations.
/// Expressions are affine in the builder's variables; `add_ge`/`add_eq`
/// constrain an expression against zero.
class Builder {
public:
    struct Expr {
        std::vector<std::pair<int, double>> terms;
        double constant = 0.0;

        Expr& add(int var, double coeff) {
            if (coeff != 0.0) terms.emplace_back(var, coeff);
            return *this;
        }
    };

    int add_var(double lo = -kInf, double hi = kInf);
    std::vector<int> add_vars(int n, double lo = -kInf, double hi = kInf);

    void add_ge(const Expr& e);  // e >= 0
    void add_eq(const Expr& e);  // e == 0
    void add_objective(int var, double coeff);

    int num_vars() const { return static_cast<int>(lower_.size()); }
    LinearProgram build() const;

private:
    Vec lower_, upper_, objective_;
    std::vector<Expr> ge_, eq_;
};

} // namespace orba::lp
