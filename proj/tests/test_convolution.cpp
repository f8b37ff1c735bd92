#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orba/convolution.hpp"
#include "orba/errors.hpp"
#include "orba/rng.hpp"

#include <cmath>

using namespace orba;

namespace {

GroupFunction integer_identity_function(int range) {
    Vec values(2 * range + 1);
    for (int n = -range; n <= range; ++n) values[n + range] = double(n);
    return make_integer_function(range, std::move(values), Growth{1.0, 1});
}

GroupFunction indicator(const FiniteGroup& g, int element) {
    Vec values(g.order(), 0.0);
    values[element] = 1.0;
    return make_finite_function(g, std::move(values));
}

} // namespace

TEST_CASE("finite group construction and validation") {
    const FiniteGroup z5 = FiniteGroup::cyclic(5);
    CHECK(z5.identity == 0);
    CHECK(z5.inverse[2] == 3);

    auto broken = FiniteGroup::cyclic(3).table;
    broken[1][2] = 1; // not a group anymore
    CHECK_THROWS_AS((void)FiniteGroup::from_table(broken), ArgumentError);
}

TEST_CASE("growth descriptors are checked against stored values") {
    Vec values(21);
    for (int n = -10; n <= 10; ++n) values[n + 10] = double(n * n);
    CHECK_NOTHROW((void)make_integer_function(10, values, Growth{1.0, 2}));
    CHECK_THROWS_AS((void)make_integer_function(10, values, Growth{1.0, 1}), ArgumentError);
}

TEST_CASE("translation worked examples") {
    const Group z = Group::integers(4);
    const GroupFunction f = integer_identity_function(10);

    // Identity translation.
    const GroupFunction l0 = translate(z, f, 0);
    for (int y = -4; y <= 4; ++y) CHECK(l0.at_int(y) == double(y));

    // Shift by two: (L_2 f)(y) = f(y - 2) = y - 2.
    const GroupFunction l2 = translate(z, f, 2);
    for (int y = -4; y <= 4; ++y) CHECK(l2.at_int(y) == double(y - 2));

    // Indicator shifting on the cyclic group.
    const FiniteGroup z5 = FiniteGroup::cyclic(5);
    const Group gz5 = Group::finite(z5);
    const GroupFunction shifted = translate(gz5, indicator(z5, 0), 1);
    CHECK(shifted.values == Vec{0.0, 1.0, 0.0, 0.0, 0.0});

    // Out-of-range translation is rejected with the needed range.
    CHECK_THROWS_AS((void)translate(z, f, 8), RangeError);
}

TEST_CASE("translation algebra: composition matches products") {
    const FiniteGroup z6 = FiniteGroup::cyclic(6);
    const Group g = Group::finite(z6);
    Sampler rng(211);
    Vec values(6);
    for (double& v : values) v = rng.uniform(-2, 2);
    const GroupFunction f = make_finite_function(z6, values);
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y) {
            const GroupFunction lhs = translate(g, f, z6.table[x][y]);
            const GroupFunction rhs = translate(g, translate(g, f, y), x);
            CHECK(linf_norm(sub(lhs.values, rhs.values)) <= 1e-12);
        }

    const Group z = Group::integers(3);
    const GroupFunction fi = integer_identity_function(12);
    for (int x = -2; x <= 2; ++x)
        for (int y = -2; y <= 2; ++y) {
            const GroupFunction lhs = translate(z, fi, x + y);
            const GroupFunction rhs = translate(z, translate(z, fi, y, 3 + std::abs(x)), x);
            CHECK(linf_norm(sub(lhs.values, rhs.values)) <= 1e-12);
        }
}

TEST_CASE("weight construction on the integers: pinned values") {
    const Group z = Group::integers(4);
    const GroupFunction f = integer_identity_function(10);
    const WeightFunctions wf = weight_builder(z, f);

    // u(0) = 1 + sup|f([-2,2])| = 3; v(0) = 3; w(0) = alpha_1 = 3.
    CHECK(wf.u_at(z, 0) == doctest::Approx(3.0));
    CHECK(wf.v[z.index_of(0)] == doctest::Approx(3.0));
    CHECK(wf.w.at_int(0) == doctest::Approx(3.0));

    // alpha_2 = 2 * (1 + sup|f(K_3)|) = 8; w(1) = alpha_1 + alpha_2 = 11.
    CHECK(wf.w.at_int(1) == doctest::Approx(11.0));
    CHECK(wf.v[z.index_of(1)] == doctest::Approx(3.0));

    // Domination sample at x = 2, y = 3: |f(1)| = 1 <= u(2) * v(3) = 4 * 15.
    CHECK(wf.u_at(z, 2) == doctest::Approx(4.0));
    CHECK(wf.v[z.index_of(3)] == doctest::Approx(15.0));
    CHECK(std::fabs(f.at_int(3 - 2)) <= wf.u_at(z, 2) * wf.v[z.index_of(3)]);
}

TEST_CASE("weight construction dominates every window translate") {
    for (const GroupFunction& f :
         {integer_identity_function(12),
          [] {
              Vec values(25);
              for (int n = -12; n <= 12; ++n) values[n + 12] = double(n) * n;
              return make_integer_function(12, values, Growth{1.0, 2});
          }()}) {
        const Group z = Group::integers(4);
        const WeightFunctions wf = weight_builder(z, f);
        for (int x = -4; x <= 4; ++x) {
            const GroupFunction lx = translate(z, f, x);
            for (int y = -4; y <= 4; ++y) {
                CHECK(std::fabs(lx.at_int(y)) <=
                      wf.u_at(z, x) * wf.w.at_int(y) + 1e-12);
            }
        }
        for (int y = -4; y <= 4; ++y)
            CHECK(wf.w.at_int(y) >= wf.v[z.index_of(y)] - 1e-12);
    }
}

TEST_CASE("weight construction beyond stored values needs the growth descriptor") {
    const Group z = Group::integers(6);
    Vec values(2 * 6 + 1);
    for (int n = -6; n <= 6; ++n) values[n + 6] = double(n);
    // Range 6 cannot provide sup |f(K_8)| exactly and no growth is declared.
    const GroupFunction f = make_integer_function(6, values);
    CHECK_THROWS_AS((void)weight_builder(z, f), RangeError);
    // With the descriptor the suprema are bounded instead.
    const GroupFunction g = make_integer_function(6, values, Growth{1.0, 1});
    CHECK_NOTHROW((void)weight_builder(z, g));
}

TEST_CASE("direct convolution worked examples") {
    const Group z = Group::integers(4);
    const GroupFunction f = integer_identity_function(10);

    // Dirac at the identity reproduces f.
    const GroupFunction at_e = convolve_direct(z, GroupMeasure{{{0, 1.0}}}, f);
    for (int y = -4; y <= 4; ++y) CHECK(at_e.at_int(y) == double(y));

    // Half-half mixture shifts the mean: (mu * f)(y) = y - 1/2.
    const GroupFunction mixed = convolve_direct(z, GroupMeasure{{{0, 0.5}, {1, 0.5}}}, f);
    for (int y = -4; y <= 4; ++y) CHECK(mixed.at_int(y) == doctest::Approx(y - 0.5));

    // Dirac shifting an indicator on the cyclic group.
    const FiniteGroup z5 = FiniteGroup::cyclic(5);
    const GroupFunction moved =
        convolve_direct(Group::finite(z5), GroupMeasure{{{2, 1.0}}}, indicator(z5, 0));
    CHECK(moved.values == Vec{0.0, 0.0, 1.0, 0.0, 0.0});

    // Range insufficiency is reported.
    const GroupFunction small = integer_identity_function(4);
    CHECK_THROWS_AS(
        (void)convolve_direct(z, GroupMeasure{{{2, 1.0}}}, small), RangeError);
    // Support outside the window is rejected.
    CHECK_THROWS_AS((void)convolve_direct(z, GroupMeasure{{{9, 1.0}}}, f), ArgumentError);
}

TEST_CASE("integral route equals the direct convolution") {
    const Group z = Group::integers(4);
    const GroupFunction f = integer_identity_function(12);

    const auto at_e = convolve_via_integral(z, GroupMeasure{{{0, 1.0}}}, f);
    CHECK(at_e.max_deviation <= 1e-12);
    for (int y = -4; y <= 4; ++y) CHECK(at_e.result.at_int(y) == doctest::Approx(y));

    const auto mixed = convolve_via_integral(z, GroupMeasure{{{0, 0.5}, {1, 0.5}}}, f);
    CHECK(mixed.max_deviation <= 1e-12);
    for (int y = -4; y <= 4; ++y)
        CHECK(mixed.result.at_int(y) == doctest::Approx(y - 0.5));

    // Zero-mass measure short circuits to the zero function.
    const auto zero = convolve_via_integral(z, GroupMeasure{}, f);
    CHECK(linf_norm(zero.result.values) == 0.0);
}

TEST_CASE("cyclic sweep: random measures against all indicator basis functions") {
    const FiniteGroup z5 = FiniteGroup::cyclic(5);
    const Group g = Group::finite(z5);
    Sampler rng(227);
    for (int trial = 0; trial < 10; ++trial) {
        GroupMeasure mu;
        for (int x = 0; x < 5; ++x) {
            const double mass = rng.uniform_int(0, 4) / 4.0;
            if (mass > 0.0) mu.support.emplace_back(x, mass);
        }
        for (int basis = 0; basis < 5; ++basis) {
            const auto check = convolve_via_integral(g, mu, indicator(z5, basis));
            CHECK(check.max_deviation <= 1e-12);
        }
    }
}
