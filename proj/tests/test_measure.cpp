#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "orba/errors.hpp"
#include "orba/measure.hpp"
#include "orba/rng.hpp"

#include <cmath>

using namespace orba;
using namespace orba::test;

namespace {

IntegrableFunction random_simple(Sampler& rng, const MeasureSpace& mu,
                                 const OrderedSpace& carrier) {
    std::vector<Vec> values;
    for (int i = 0; i < mu.size(); ++i) {
        Vec v(carrier.dim);
        for (double& c : v) c = rng.uniform(-2.0, 2.0);
        values.push_back(std::move(v));
    }
    return make_function(mu, carrier, std::move(values));
}

} // namespace

TEST_CASE("measure construction validates atoms") {
    CHECK_THROWS_AS(MeasureSpace::finite({}), ArgumentError);
    CHECK_THROWS_AS(MeasureSpace::finite({{"p", 0.0}}), ArgumentError);
    CHECK_THROWS_AS(MeasureSpace::finite({{"p", -1.0}}), ArgumentError);
    CHECK_THROWS_AS(MeasureSpace::truncated_n({{"n1", 1.0}}, -0.5), ArgumentError);
    const auto m = MeasureSpace::finite({{"p", 2.0}, {"q", 0.5}});
    CHECK(m.total_mass() == doctest::Approx(2.5));
}

TEST_CASE("elementary integral of worked examples") {
    auto carrier = l1_lattice(2);
    const auto mu = MeasureSpace::finite({{"p", 2.0}, {"q", 0.5}});
    const auto f = make_function(mu, *carrier, {{1.0, 0.0}, {0.0, 2.0}});
    const Vector integral = phi_integral(*carrier, f);
    CHECK(integral.coords == Vec{2.0, 1.0});

    const auto zero = make_function(mu, *carrier, {{0.0, 0.0}, {0.0, 0.0}});
    CHECK(linf_norm(phi_integral(*carrier, zero).coords) == 0.0);

    // Indicator with mass 3.
    const auto indicator = make_function(MeasureSpace::finite({{"A", 3.0}}), *carrier,
                                         {{1.0, 1.0}});
    CHECK(phi_integral(*carrier, indicator).coords == Vec{3.0, 3.0});
}

TEST_CASE("l1 norm and tail bookkeeping") {
    auto carrier = l1_lattice(2);
    const auto mu = MeasureSpace::finite({{"p", 2.0}, {"q", 0.5}});
    const auto f = make_function(mu, *carrier, {{1.0, 0.0}, {0.0, 2.0}});
    const auto n = l1_norm(*carrier, f);
    CHECK(n.value == doctest::Approx(3.0));
    CHECK(n.uncertainty == 0.0);

    const auto trunc = MeasureSpace::truncated_n({{"n1", 1.0}}, 0.01);
    const auto g = make_function(trunc, *carrier, {{1.0, 0.0}});
    const auto tn = l1_norm(*carrier, g);
    CHECK(tn.value == doctest::Approx(1.0));
    CHECK(tn.uncertainty == doctest::Approx(0.01));
}

TEST_CASE("atomwise order comparison") {
    auto carrier = l1_lattice(2);
    const auto mu = MeasureSpace::finite({{"p", 1.0}});
    const auto zero = make_function(mu, *carrier, {{0.0, 0.0}});
    const auto pos = make_function(mu, *carrier, {{1.0, 2.0}});
    CHECK(ae_leq(*carrier, zero, pos));
    CHECK(ae_leq(*carrier, pos, pos));
    const auto left = make_function(mu, *carrier, {{1.0, 0.0}});
    const auto right = make_function(mu, *carrier, {{0.0, 1.0}});
    CHECK_FALSE(ae_leq(*carrier, left, right));

    const auto other = MeasureSpace::finite({{"q", 1.0}});
    const auto h = make_function(other, *carrier, {{0.0, 0.0}});
    CHECK_THROWS_AS((void)ae_leq(*carrier, zero, h), CarrierError);
}

TEST_CASE("integral is linear on random simple functions") {
    auto carrier = l1_lattice(3);
    const auto mu = MeasureSpace::finite({{"a", 0.5}, {"b", 1.5}, {"c", 2.0}});
    Sampler rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        const auto f = random_simple(rng, mu, *carrier);
        const auto g = random_simple(rng, mu, *carrier);
        const double alpha = rng.uniform(-2.0, 2.0);
        const double beta = rng.uniform(-2.0, 2.0);
        std::vector<Vec> combo;
        for (int i = 0; i < mu.size(); ++i)
            combo.push_back(add(scale(alpha, f.values[i]), scale(beta, g.values[i])));
        const auto fg = make_function(mu, *carrier, std::move(combo));
        const Vec expected = add(scale(alpha, phi_integral(*carrier, f).coords),
                                 scale(beta, phi_integral(*carrier, g).coords));
        CHECK(linf_norm(sub(phi_integral(*carrier, fg).coords, expected)) <= 1e-8);
    }
}

TEST_CASE("integral norm is bounded by the l1 norm") {
    auto carrier = l1_lattice(3);
    auto sup_carrier = sup_lattice(3);
    const auto mu = MeasureSpace::finite({{"a", 0.5}, {"b", 1.5}, {"c", 2.0}});
    Sampler rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        for (const auto& space : {carrier, sup_carrier}) {
            const auto f = random_simple(rng, mu, *space);
            CHECK(norm_value(*space, phi_integral(*space, f).coords) <=
                  l1_norm(*space, f).value + 1e-8);
        }
    }
}

TEST_CASE("positive functions integrate into the cone") {
    auto psum = partial_sum_space(3);
    const auto inv = inverse(partial_sum_matrix(3));
    REQUIRE(inv);
    const auto mu = MeasureSpace::finite({{"a", 1.0}, {"b", 0.25}});
    Sampler rng(37);
    const auto gens = dual_generators(*psum);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Vec> values;
        for (int i = 0; i < mu.size(); ++i) {
            Vec profile(3);
            for (double& c : profile) c = rng.uniform(0.0, 2.0);
            values.push_back(matvec(*inv, profile)); // positive in the partial-sum order
        }
        const auto f = make_function(mu, *psum, std::move(values));
        const Vec integral = phi_integral(*psum, f).coords;
        for (const Vec& alpha : gens) CHECK(dot(alpha, integral) >= -1e-9);
    }
}

TEST_CASE("function JSON round trip") {
    auto carrier = l1_lattice(2, "json-carrier");
    const auto mu = MeasureSpace::truncated_n({{"n1", 1.0}, {"n2", 1.0}}, 0.125);
    const auto f = make_function(mu, *carrier, {{1.0, 0.0}, {0.5, 0.25}});
    const auto j = function_to_json(f);
    const auto back = function_from_json(j, *carrier);
    CHECK(back.values == f.values);
    CHECK(back.space.kind == MeasureSpace::Kind::TruncatedN);
    CHECK(back.space.tail_bound == doctest::Approx(0.125));
    CHECK(back.effective_tail_bound() == doctest::Approx(0.125));
}
