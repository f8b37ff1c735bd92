#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_lp.hpp"
#include "orba/errors.hpp"
#include "orba/lp.hpp"
#include "orba/rng.hpp"

#include <cmath>

using namespace orba;

namespace {

lp::LinearProgram boxed_random_program(Sampler& rng) {
    lp::LinearProgram prog;
    const int n = rng.uniform_int(1, 4);
    const int m = rng.uniform_int(0, 8);
    auto grid = [&](double lo, double hi) {
        // Snap to a coarse grid so degenerate/tied bases actually occur.
        return std::round(rng.uniform(lo, hi) * 4.0) / 4.0;
    };
    prog.objective.resize(n);
    for (double& c : prog.objective) c = grid(-1.0, 1.0);
    prog.ge_matrix = Mat(m, n);
    prog.ge_rhs.resize(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) prog.ge_matrix.at(i, j) = grid(-2.0, 2.0);
        prog.ge_rhs[i] = grid(-2.0, 2.0);
    }
    prog.lower.assign(n, -10.0);
    prog.upper.assign(n, 10.0);
    return prog;
}

} // namespace

TEST_CASE("one-variable bound program") {
    lp::LinearProgram prog;
    prog.objective = {1.0};
    prog.ge_matrix = Mat(1, 1);
    prog.ge_matrix.at(0, 0) = 1.0;
    prog.ge_rhs = {3.0};
    const auto sol = lp::solve(prog);
    REQUIRE(sol.status == lp::Status::Optimal);
    CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.max_residual <= 1e-9);
}

TEST_CASE("absolute-value dominator program") {
    // min a1 + a2 with a >= 0, a >= (1,-2), a >= -(1,-2) componentwise.
    lp::LinearProgram prog;
    prog.objective = {1.0, 1.0};
    prog.ge_matrix = Mat(4, 2);
    prog.ge_matrix.at(0, 0) = 1.0;
    prog.ge_matrix.at(1, 0) = 1.0;
    prog.ge_matrix.at(2, 1) = 1.0;
    prog.ge_matrix.at(3, 1) = 1.0;
    prog.ge_rhs = {1.0, -1.0, -2.0, 2.0};
    prog.lower = {0.0, 0.0};
    prog.upper = {lp::kInf, lp::kInf};
    const auto sol = lp::solve(prog);
    REQUIRE(sol.status == lp::Status::Optimal);
    CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.point[0] == doctest::Approx(1.0));
    CHECK(sol.point[1] == doctest::Approx(2.0));
}

TEST_CASE("infeasible interval") {
    lp::LinearProgram prog;
    prog.objective = {0.0};
    prog.ge_matrix = Mat(2, 1);
    prog.ge_matrix.at(0, 0) = 1.0;
    prog.ge_matrix.at(1, 0) = -1.0;
    prog.ge_rhs = {1.0, 0.0}; // x >= 1 and -x >= 0
    CHECK(lp::solve(prog).status == lp::Status::Infeasible);
}

TEST_CASE("unbounded direction") {
    lp::LinearProgram prog;
    prog.objective = {-1.0};
    CHECK(lp::solve(prog).status == lp::Status::Unbounded);
}

TEST_CASE("equality constraints with free variables") {
    // min x + y subject to x + y = 4, x - y = 0.
    lp::LinearProgram prog;
    prog.objective = {1.0, 1.0};
    prog.eq_matrix = Mat(2, 2);
    prog.eq_matrix.at(0, 0) = 1.0;
    prog.eq_matrix.at(0, 1) = 1.0;
    prog.eq_matrix.at(1, 0) = 1.0;
    prog.eq_matrix.at(1, 1) = -1.0;
    prog.eq_rhs = {4.0, 0.0};
    const auto sol = lp::solve(prog);
    REQUIRE(sol.status == lp::Status::Optimal);
    CHECK(sol.point[0] == doctest::Approx(2.0));
    CHECK(sol.point[1] == doctest::Approx(2.0));
}

TEST_CASE("variable cap is enforced") {
    lp::LinearProgram prog;
    prog.objective.assign(600, 1.0);
    prog.lower.assign(600, 0.0);
    prog.upper.assign(600, 1.0);
    CHECK_THROWS_AS((void)lp::solve(prog), SolverError);
}

TEST_CASE("agrees with the vertex-enumeration oracle on seeded programs") {
    Sampler rng(20240901);
    int optimal_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto prog = boxed_random_program(rng);
        const auto sol = lp::solve(prog);
        const auto oracle = test::enumerate_lp(prog);
        if (oracle.feasible) {
            ++optimal_seen;
            REQUIRE_MESSAGE(sol.status == lp::Status::Optimal, "trial ", trial);
            CHECK_MESSAGE(std::fabs(sol.objective - oracle.objective) <= 1e-9,
                          "trial ", trial, ": simplex ", sol.objective, " oracle ",
                          oracle.objective);
        } else {
            ++infeasible_seen;
            CHECK_MESSAGE(sol.status == lp::Status::Infeasible, "trial ", trial);
        }
    }
    // The generator must exercise both outcomes.
    CHECK(optimal_seen > 50);
    CHECK(infeasible_seen > 5);
}

TEST_CASE("deterministic: identical input gives identical output bits") {
    Sampler rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto prog = boxed_random_program(rng);
        const auto first = lp::solve(prog);
        const auto second = lp::solve(prog);
        CHECK(first.status == second.status);
        if (first.status == lp::Status::Optimal) {
            CHECK(first.objective == second.objective);
            CHECK(first.point == second.point);
        }
    }
}

TEST_CASE("builder assembles expressions with constants") {
    lp::Builder b;
    const int x = b.add_var(0.0, lp::kInf);
    lp::Builder::Expr e;
    e.add(x, 1.0);
    e.constant = -3.0; // x - 3 >= 0
    b.add_ge(e);
    b.add_objective(x, 1.0);
    const auto sol = lp::solve(b.build());
    REQUIRE(sol.status == lp::Status::Optimal);
    CHECK(sol.objective == doctest::Approx(3.0));
}
