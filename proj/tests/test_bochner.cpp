#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "orba/bochner.hpp"
#include "orba/errors.hpp"
#include "orba/rng.hpp"

#include <cmath>

using namespace orba;
using namespace orba::test;

namespace {

MeasureSpace counting_prefix(int n, double tail) {
    std::vector<Atom> atoms;
    for (int i = 1; i <= n; ++i) atoms.push_back({"n" + std::to_string(i), 1.0});
    return MeasureSpace::truncated_n(std::move(atoms), tail);
}

} // namespace

TEST_CASE("finite-space integral equals the elementary integral") {
    auto carrier = l1_lattice(2);
    const auto mu = MeasureSpace::finite({{"p", 2.0}, {"q", 0.5}});
    const auto f = make_function(mu, *carrier, {{1.0, 0.0}, {0.0, 2.0}});
    const auto result = bochner_integral(*carrier, f);
    CHECK(result.value.coords == phi_integral(*carrier, f).coords);
    CHECK(result.error_bound == 0.0);
}

TEST_CASE("geometric series on the truncated counting space") {
    auto carrier = l1_lattice(2);
    const double tail = std::pow(2.0, -20);
    const auto mu = counting_prefix(20, tail);
    std::vector<Vec> values;
    for (int n = 1; n <= 20; ++n) values.push_back({std::pow(2.0, -n), 0.0});
    const auto f = make_function(mu, *carrier, std::move(values));
    const auto result = bochner_integral(*carrier, f);
    // Frozen partial sum: 1 - 2^-20.
    CHECK(result.value.coords[0] == doctest::Approx(1.0 - tail).epsilon(1e-15));
    CHECK(result.value.coords[1] == 0.0);
    CHECK(result.error_bound == doctest::Approx(tail));
}

TEST_CASE("integral agrees with the limit along two distinct simple approximations") {
    auto carrier = l1_lattice(1);
    const auto mu = counting_prefix(12, 1e-6);
    std::vector<Vec> values;
    for (int n = 1; n <= 12; ++n) values.push_back({std::pow(2.0, -n)});
    const auto f = make_function(mu, *carrier, values);
    const Vec integral = bochner_integral(*carrier, f).value.coords;

    // Route one: prefix truncations. Route two: even atoms first, then odd.
    std::vector<int> prefix_order, interleaved;
    for (int i = 0; i < 12; ++i) prefix_order.push_back(i);
    for (int i = 1; i < 12; i += 2) interleaved.push_back(i);
    for (int i = 0; i < 12; i += 2) interleaved.push_back(i);

    for (const auto& order : {prefix_order, interleaved}) {
        std::vector<Vec> approx(12, Vec{0.0});
        Vec last_phi;
        for (int idx : order) {
            approx[idx] = values[idx];
            const auto s = make_function(mu, *carrier, approx);
            // l1 distance from f shrinks to the coverage residual.
            double distance = 0.0;
            for (int i = 0; i < 12; ++i)
                distance +=
                    mu.atoms[i].weight * std::fabs(f.values[i][0] - s.values[i][0]);
            const Vec phi = bochner_integral(*carrier, s).value.coords;
            CHECK(std::fabs(phi[0] - integral[0]) <= distance + 1e-12);
            last_phi = phi;
        }
        // Full coverage: the elementary integrals of both routes coincide
        // with the Bochner value.
        CHECK(last_phi[0] == doctest::Approx(integral[0]).epsilon(1e-15));
    }
}

TEST_CASE("pushforward identities") {
    auto plane = l1_lattice(2, "pf-plane");
    const auto mu = MeasureSpace::finite({{"p", 2.0}, {"q", 0.5}});
    const auto f = make_function(mu, *plane, {{1.0, 0.0}, {0.0, 2.0}}); // integral (2,1)

    // Identity map.
    const auto same = pushforward_integrate(Mat::identity(2), *plane, *plane, f);
    CHECK(same.value.coords == Vec{2.0, 1.0});

    // Shear (x, y) -> (x, x + y): the integral transports to (2, 3).
    Mat shear = Mat::identity(2);
    shear.at(1, 0) = 1.0;
    const auto sheared = pushforward_integrate(shear, *plane, *plane, f);
    CHECK(sheared.value.coords[0] == doctest::Approx(2.0));
    CHECK(sheared.value.coords[1] == doctest::Approx(3.0));

    // Coordinate functional on a positive function: nonnegative value.
    auto linec = l1_lattice(1, "pf-line");
    Mat alpha(1, 2);
    alpha.at(0, 0) = 1.0;
    const auto pos = make_function(mu, *plane, {{1.0, 0.5}, {0.25, 2.0}});
    const auto projected = pushforward_integrate(alpha, *plane, *linec, pos);
    CHECK(projected.value.coords[0] >= 0.0);
    CHECK(projected.value.coords[0] == doctest::Approx(2.0 * 1.0 + 0.5 * 0.25));

    // A sign flip is not order preserving.
    Mat flip = Mat::identity(2);
    flip.at(1, 1) = -1.0;
    CHECK_THROWS_AS((void)pushforward_integrate(flip, *plane, *plane, f), OrderError);
}

TEST_CASE("simple dominate on a lattice is the atomwise modulus") {
    auto carrier = l1_lattice(2);
    const auto mu = MeasureSpace::finite({{"p", 1.0}, {"q", 2.0}});
    const auto f = make_function(mu, *carrier, {{1.0, -2.0}, {-0.5, 0.0}});
    const auto pair = simple_dominate(*carrier, f, 0.1);
    CHECK(pair.g.values[0] == Vec{1.0, 2.0});
    CHECK(pair.g.values[1][0] == doctest::Approx(0.5));
    CHECK(l1_norm(*carrier, pair.g).value ==
          doctest::Approx(l1_norm(*carrier, f).value).epsilon(1e-9));
    CHECK(pair.c_sampled == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(pair.per_set_slack == doctest::Approx(0.1 / 3.0));
}

TEST_CASE("simple dominate on the partial-sum carrier meets the slack bound") {
    auto psum = partial_sum_space(4);
    const auto mu = MeasureSpace::finite({{"A", 1.0}});
    const auto f = make_function(mu, *psum, {alternating(4)});
    const auto pair = simple_dominate(*psum, f, 0.1);
    const double g_l1 = l1_norm(*psum, pair.g).value;
    CHECK(g_l1 == doctest::Approx(1.0).epsilon(1e-9)); // N(x) * mass
    CHECK(g_l1 <= 1.0 + 0.1 + 1e-9);
    CHECK(ae_leq(*psum, pair.g, pair.g)); // sanity: g is well formed

    const auto zero = make_function(mu, *psum, {Vec(4, 0.0)});
    const auto zpair = simple_dominate(*psum, zero, 0.1);
    CHECK(linf_norm(zpair.g.values[0]) == 0.0);
}

TEST_CASE("telescoping dominate on truncated spaces") {
    auto carrier = l1_lattice(2);
    const double tail = 1e-4;
    const auto mu = counting_prefix(10, tail);
    std::vector<Vec> values;
    for (int n = 1; n <= 10; ++n) values.push_back({std::pow(2.0, -n), -std::pow(3.0, -n)});
    const auto f = make_function(mu, *carrier, std::move(values));

    const auto pair = bochner_dominate(*carrier, f, 0.25);
    for (int i = 0; i < 10; ++i) {
        CHECK(cone_contains(carrier->cone, sub(pair.g.values[i], f.values[i]), 1e-9));
        CHECK(cone_contains(carrier->cone, add(pair.g.values[i], f.values[i]), 1e-9));
    }
    CHECK(l1_norm(*carrier, pair.g).value <=
          pair.c_used * (l1_norm(*carrier, f).value + 0.25) + 1e-9);

    // Too small an epsilon cannot absorb the certified tail.
    CHECK_THROWS_AS((void)bochner_dominate(*carrier, f, 2e-4), ScheduleError);
}

TEST_CASE("telescoping dominate collapses for an effectively simple function") {
    auto psum = partial_sum_space(4);
    const auto mu = MeasureSpace::truncated_n({{"n1", 1.0}, {"n2", 1.0}}, 0.0);
    const auto f = make_function(mu, *psum, {alternating(4), Vec(4, 0.0)});
    const auto pair = bochner_dominate(*psum, f, 0.1);
    CHECK(l1_norm(*psum, pair.g).value == doctest::Approx(1.0).epsilon(1e-8));
    const auto simple = simple_dominate(*psum, f, 0.1);
    CHECK(linf_norm(sub(pair.g.values[0], simple.g.values[0])) <= 1e-8);

    const auto zero = make_function(mu, *psum, {Vec(4, 0.0), Vec(4, 0.0)});
    const auto zpair = bochner_dominate(*psum, zero, 0.1);
    CHECK(l1_norm(*psum, zpair.g).value == 0.0);
}

TEST_CASE("dual-functional verification pins the integral uniquely") {
    auto plane = l1_lattice(2, "pettis-plane");
    const auto mu = MeasureSpace::finite({{"p", 2.0}, {"q", 0.5}});
    const auto f = make_function(mu, *plane, {{1.0, 0.0}, {0.0, 2.0}});
    CHECK(pettis_check(*plane, f));

    const auto gens = dual_generators(*plane);
    const Vector integral = bochner_integral(*plane, f).value;
    CHECK(pettis_verify(*plane, f, gens, integral));
    Vector perturbed = integral;
    perturbed.coords[0] += 1e-3;
    CHECK_FALSE(pettis_verify(*plane, f, gens, perturbed));

    auto psum = partial_sum_space(3);
    const auto mu2 = MeasureSpace::finite({{"p", 1.0}, {"q", 1.0}});
    const auto g = make_function(mu2, *psum, {{1.0, -1.0, 0.5}, {0.0, 2.0, -0.25}});
    CHECK(pettis_check(*psum, g));
}

TEST_CASE("lattice modulus is norm contractive") {
    auto lattice = l1_lattice(3);
    Sampler rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        Vec x(3), y(3);
        for (double& c : x) c = rng.uniform(-2, 2);
        for (double& c : y) c = rng.uniform(-2, 2);
        Vec ax(3), ay(3);
        for (int i = 0; i < 3; ++i) {
            ax[i] = std::fabs(x[i]);
            ay[i] = std::fabs(y[i]);
        }
        CHECK(norm_value(*lattice, sub(ax, ay)) <= norm_value(*lattice, sub(x, y)) + 1e-12);
    }
}

TEST_CASE("dominated convergence at desk scale") {
    auto carrier = l1_lattice(1);
    const auto mu = counting_prefix(16, 1e-9);
    std::vector<Vec> values;
    for (int n = 1; n <= 16; ++n) values.push_back({std::pow(2.0, -n)});
    const auto f = make_function(mu, *carrier, values);
    const double full = bochner_integral(*carrier, f).value.coords[0];

    double previous = 1e9;
    for (int k = 4; k <= 16; k += 4) {
        std::vector<Vec> truncated(16, Vec{0.0});
        for (int i = 0; i < k; ++i) truncated[i] = values[i];
        const auto fk = make_function(mu, *carrier, truncated);
        const double err = std::fabs(bochner_integral(*carrier, fk).value.coords[0] - full);
        CHECK(err <= previous + 1e-15);
        previous = err;
    }
    CHECK(previous <= std::pow(2.0, -16) + 1e-12);
}

TEST_CASE("atom-indexed transfer map is an isometric order isomorphism") {
    // T(sum x_n 1_{A_n}) = (mass_1 x_1, ..., mass_N x_N) maps functions to
    // the weighted product space with the summed norm.
    auto carrier = l1_lattice(2);
    const auto mu = MeasureSpace::finite({{"a", 0.5}, {"b", 2.0}});
    Sampler rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec> values;
        for (int i = 0; i < mu.size(); ++i) {
            Vec v(2);
            for (double& c : v) c = rng.uniform(-2, 2);
            values.push_back(std::move(v));
        }
        const auto f = make_function(mu, *carrier, values);

        // Image under the transfer map.
        std::vector<Vec> image;
        for (int i = 0; i < mu.size(); ++i)
            image.push_back(scale(mu.atoms[i].weight, values[i]));

        // Isometry: the function-space norm equals the summed product norm.
        double product_norm = 0.0;
        for (const Vec& v : image) product_norm += norm_value(*carrier, v);
        CHECK(l1_norm(*carrier, f).value == doctest::Approx(product_norm).epsilon(1e-10));

        // Order isomorphism: f >= 0 atomwise iff every image component is
        // in the cone (positive masses preserve and reflect the order).
        bool f_positive = true, image_positive = true;
        for (int i = 0; i < mu.size(); ++i) {
            f_positive = f_positive && cone_contains(carrier->cone, values[i], 1e-12);
            image_positive = image_positive && cone_contains(carrier->cone, image[i], 1e-12);
        }
        CHECK(f_positive == image_positive);
    }
}

TEST_CASE("directedness transfers between carrier and function space atomwise") {
    auto psum = partial_sum_space(3);
    const auto mu = MeasureSpace::finite({{"a", 1.0}, {"b", 0.5}});
    Sampler rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Vec> values, pos, neg;
        for (int i = 0; i < mu.size(); ++i) {
            Vec v(3);
            for (double& c : v) c = rng.uniform(-2, 2);
            const auto witness = generating_witness(*psum, v);
            CHECK(witness.residual <= 1e-9);
            pos.push_back(witness.p);
            neg.push_back(witness.q);
            values.push_back(std::move(v));
        }
        // The atomwise decomposition exhibits f = f_plus - f_minus with both
        // parts positive, so the function space is directed too.
        const auto fp = make_function(mu, *psum, pos);
        const auto fm = make_function(mu, *psum, neg);
        const auto zero = make_function(mu, *psum, {Vec(3, 0.0), Vec(3, 0.0)});
        CHECK(ae_leq(*psum, zero, fp));
        CHECK(ae_leq(*psum, zero, fm));
    }
}
