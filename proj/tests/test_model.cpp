#include "nomapop/error.hpp"
#include "nomapop/model.hpp"
#include "reference.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace nomapop;

TEST_CASE("db_to_linear")
{
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(db_to_linear(60.0) == doctest::Approx(1.0e6).epsilon(1e-15));
}

TEST_CASE("mean_gain")
{
    CHECK(mean_gain(50.0, 1.0, 3.0) == doctest::Approx(8.0e-6).epsilon(1e-14));
    CHECK(mean_gain(100.0, 1.0, 3.0) == doctest::Approx(1.0e-6).epsilon(1e-14));
    CHECK(mean_gain(1.0, 1.0, 3.0) == 1.0);

    CHECK_THROWS_AS(mean_gain(0.0, 1.0, 3.0), Error);
    CHECK_THROWS_AS(mean_gain(-5.0, 1.0, 3.0), Error);
    try {
        mean_gain(0.0, 1.0, 3.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
}

TEST_CASE("pi_threshold")
{
    CHECK(pi_threshold(1.0) == 1.0);
    CHECK(pi_threshold(0.0) == 0.0);
    // 2^0.1 - 1
    CHECK(pi_threshold(0.1) == doctest::Approx(0.0717735).epsilon(1e-6));
    CHECK(pi_threshold(0.1) == doctest::Approx(static_cast<double>(std::pow(2.0L, 0.1L) - 1.0L)).epsilon(1e-15));
}

TEST_CASE("rate")
{
    CHECK(rate(0.0) == 0.0);
    CHECK(rate(1.0) == 1.0);
    CHECK(rate(3.0) == 2.0);
}

TEST_CASE("sinrs")
{
    SUBCASE("zero gain")
    {
        const auto s = sinrs(0.5, 0.0, 0.0, 0.2, 1e6);
        CHECK(s.gamma21 == 0.0);
        CHECK(s.gamma12 == 0.0);
        CHECK(s.gamma11 == 0.0);
        CHECK(s.gamma22 == 0.0);
    }
    SUBCASE("full power to the near user with perfect SIC")
    {
        const auto s = sinrs(1.0, 1.0, 1.0, 0.0, 1e6);
        CHECK(s.gamma21 == 0.0);
        CHECK(s.gamma11 == doctest::Approx(1e6));
        CHECK(s.gamma22 == 0.0);
    }
    SUBCASE("reference gains")
    {
        // Hand evaluation: noise 1e-6, near signal 4e-6, far signal 5e-7.
        const auto s = sinrs(0.5, 8e-6, 1e-6, 0.2, 1e6);
        CHECK(s.gamma21 == doctest::Approx(4.0 / 5.0).epsilon(1e-14));
        CHECK(s.gamma12 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(s.gamma11 == doctest::Approx(4.0 / 1.8).epsilon(1e-14));
        CHECK(s.gamma22 == doctest::Approx(0.5 / 1.1).epsilon(1e-14));
    }
}

TEST_CASE("sinr monotonicity properties")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double alpha = u(rng);
        const double g1 = 1e-5 * u(rng);
        const double g2 = 1e-5 * u(rng);
        const double rho = std::pow(10.0, 4.0 + 4.0 * u(rng));
        const double b_lo = u(rng);
        const double b_hi = b_lo + (1.0 - b_lo) * u(rng);
        const auto lo = sinrs(alpha, g1, g2, b_lo, rho);
        const auto hi = sinrs(alpha, g1, g2, b_hi, rho);
        CHECK(hi.gamma11 <= lo.gamma11);
        CHECK(hi.gamma22 <= lo.gamma22);
        CHECK(hi.gamma12 == lo.gamma12);
        CHECK(hi.gamma21 == lo.gamma21);
        CHECK(lo.gamma11 >= 0.0);
        CHECK(lo.gamma22 >= 0.0);

        const double a2 = alpha + (1.0 - alpha) * u(rng);
        const auto more = sinrs(a2, g1, g2, b_lo, rho);
        CHECK(more.gamma11 >= lo.gamma11);
        CHECK(more.gamma22 <= lo.gamma22);
    }
}

TEST_CASE("zetas")
{
    DerivedParams d = derive(default_config());

    SUBCASE("perfect SIC")
    {
        d.beta = 0.0;
        const auto z = zetas(0.3, d);
        CHECK(z.zeta1.value == doctest::Approx(d.pi1 / (0.3 * d.rho_t)).epsilon(1e-14));
    }
    SUBCASE("above alpha3 zeta2 is infeasible")
    {
        CHECK_FALSE(zetas(d.breakpoints.alpha3 + 1e-9, d).zeta2.feasible());
        CHECK(zetas(d.breakpoints.alpha3 - 1e-9, d).zeta2.feasible());
        CHECK_FALSE(zetas(d.breakpoints.alpha4 - 1e-9, d).zeta3.feasible());
    }
    SUBCASE("reference point")
    {
        const auto z = zetas(0.5, d);
        for (const auto& g : {z.zeta1, z.zeta2, z.zeta3, z.zeta4}) {
            CHECK(g.feasible());
            CHECK(g.value > 0.0);
        }
        // zeta2 = pi2 / ((0.5 - 0.5 pi2) rho)
        CHECK(z.zeta2.value == doctest::Approx(d.pi2 / ((0.5 - 0.5 * d.pi2) * 1e6)).epsilon(1e-13));
    }
    SUBCASE("monotone in alpha on the feasible range")
    {
        double prev1 = 0, prev2 = 0, prev3 = 0, prev4 = 0;
        bool first = true;
        const auto& b = d.breakpoints;
        for (double a = b.alpha4 + 1e-3; a < b.alpha3 - 1e-3; a += 1e-3) {
            const auto z = zetas(a, d);
            if (!first) {
                CHECK(z.zeta1.value < prev1);
                CHECK(z.zeta2.value > prev2);
                CHECK(z.zeta3.value < prev3);
                CHECK(z.zeta4.value > prev4);
            }
            prev1 = z.zeta1.value;
            prev2 = z.zeta2.value;
            prev3 = z.zeta3.value;
            prev4 = z.zeta4.value;
            first = false;
        }
    }
}

TEST_CASE("breakpoints at the reference operating point")
{
    const double pi = pi_threshold(0.1);
    const auto b = breakpoints(pi, pi, 0.2);
    CHECK(b.alpha1 == doctest::Approx(0.014152).epsilon(1e-5));
    CHECK(b.alpha2 == doctest::Approx(0.486242).epsilon(1e-5));
    CHECK(b.alpha3 == doctest::Approx(0.933033).epsilon(1e-5));
    CHECK(b.alpha4 == doctest::Approx(0.066967).epsilon(1e-5));
    CHECK(b.alpha5 == doctest::Approx(0.513758).epsilon(1e-5));
    CHECK(b.alpha6 == doctest::Approx(0.985850).epsilon(1e-5));
    CHECK(b.alpha4 > b.alpha1);
    CHECK(b.alpha6 > b.alpha3);
}

TEST_CASE("breakpoints with perfect SIC")
{
    const auto b = breakpoints(0.3, 0.7, 0.0);
    CHECK(b.alpha1 == 0.0);
    CHECK(b.alpha6 == 1.0);
}

TEST_CASE("breakpoint algebra with equal thresholds")
{
    for (double beta = 0.0; beta <= 1.0; beta += 0.05) {
        for (double pi = 0.01; pi < 3.0; pi *= 1.3) {
            const auto b = breakpoints(pi, pi, beta);
            CHECK(b.alpha2 == doctest::Approx((1 + beta * pi) / (2 + beta * pi + pi)).epsilon(1e-13));
            CHECK(b.alpha5 == doctest::Approx((1 + pi) / (2 + pi + beta * pi)).epsilon(1e-13));
            CHECK(b.alpha5 >= b.alpha2);
        }
    }
}

TEST_CASE("breakpoint orderings over random draws")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
        const double pi1 = 3.0 * u(rng) + 1e-6;
        const double pi2 = 3.0 * u(rng) + 1e-6;
        const double beta = 0.999999 * u(rng);
        const auto b = breakpoints(pi1, pi2, beta);
        CHECK(b.alpha4 > b.alpha1);
        CHECK(b.alpha6 > b.alpha3);
        // alpha5 >= alpha2 for every beta <= 1: the Case2 interval is empty.
        CHECK(b.alpha5 >= b.alpha2);
        if (pi1 * pi2 < 1.0) {
            CHECK(b.alpha1 < b.alpha2);
            CHECK(b.alpha2 < b.alpha3);
            CHECK(b.alpha4 < b.alpha5);
            CHECK(b.alpha5 < b.alpha6);
        }
    }
}

TEST_CASE("decoding orders")
{
    const auto orders = enumerate_decoding_orders();
    REQUIRE(orders.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(orders[i].order_index == i + 1);
        for (const auto& column : orders[i].columns) {
            CHECK(column[0] != column[1]);
            CHECK(std::set<int>{column[0], column[1]} == std::set<int>{1, 2});
        }
    }
    // Second order: U1 decodes U2 then itself, U2 decodes U1 then itself.
    CHECK(orders[1].columns[0] == std::array<int, 2>{2, 1});
    CHECK(orders[1].columns[1] == std::array<int, 2>{1, 2});
}

TEST_CASE("SystemConfig validation")
{
    CHECK_NOTHROW(default_config().validate());
    CHECK_NOTHROW(SystemConfig{}.validate());

    auto expect_invalid = [](SystemConfig c) {
        try {
            c.validate();
            FAIL("expected InvalidInput");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InvalidInput);
        }
    };
    SystemConfig c = default_config();
    c.beta = 1.5;
    expect_invalid(c);
    c = default_config();
    c.beta = -0.1;
    expect_invalid(c);
    c = default_config();
    c.d1 = 0.0;
    expect_invalid(c);
    c = default_config();
    c.r2_th = 0.0;
    expect_invalid(c);
    c = default_config();
    c.d1 = 120.0;  // farther than d2
    expect_invalid(c);
    c = default_config();
    c.rho_t_db = 61.0;  // disagrees with pt - noise
    expect_invalid(c);

    c = default_config();
    c.pt_dbm = -30.0 + 5e-10;
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("with_snr_db keeps the noise floor")
{
    const auto c = with_snr_db(default_config(), 70.0);
    CHECK(c.rho_t_db == 70.0);
    REQUIRE(c.pt_dbm);
    CHECK(*c.pt_dbm == doctest::Approx(-20.0));
    CHECK_NOTHROW(c.validate());

    SystemConfig bare;
    bare.pt_dbm = 10.0;
    const auto moved = with_snr_db(bare, 50.0);
    CHECK_FALSE(moved.pt_dbm.has_value());
}

TEST_CASE("derive matches the reference evaluation")
{
    const auto d = derive(default_config());
    const auto ref = reference::from(default_config());
    CHECK(d.lambda1 == doctest::Approx(static_cast<double>(ref.lambda1)).epsilon(1e-15));
    CHECK(d.lambda2 == doctest::Approx(static_cast<double>(ref.lambda2)).epsilon(1e-15));
    CHECK(d.rho_t == doctest::Approx(static_cast<double>(ref.rho)).epsilon(1e-15));
    CHECK(d.pi1 == doctest::Approx(static_cast<double>(ref.pi1)).epsilon(1e-15));
    CHECK(d.lambda1 >= d.lambda2);
}
