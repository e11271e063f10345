#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "poisson_approx/discrete_dist.hpp"
#include "poisson_approx/hypo_tests.hpp"

using namespace poisson_approx;

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return g;
}

}  // namespace

TEST_CASE("DecimalProb exact boundary arithmetic") {
    DecimalProb p = DecimalProb::parse("0.07");
    CHECK(p.value() == doctest::Approx(0.07));
    // 100 * 0.07 = 7 exactly: the smallest m >= n p + 1 must be 8, which a
    // double product (7.000000000000001) would misclassify as 9.
    CHECK(p.ceil_np(100) == 7);
    CHECK(p.floor_np(100) == 7);
    CHECK(p.m_ge_np_plus_1(8, 100));
    CHECK_FALSE(p.m_ge_np_plus_1(7, 100));
    CHECK(p.m_le_np_plus_1(8, 100));
    CHECK_FALSE(p.m_le_np_plus_1(9, 100));

    SUBCASE("parse forms") {
        CHECK(DecimalProb::parse(".5").value() == 0.5);
        CHECK(DecimalProb::parse("5e-2").value() == doctest::Approx(0.05));
        CHECK(DecimalProb::parse("0.125e-1").value() == doctest::Approx(0.0125));
        CHECK_THROWS_AS(DecimalProb::parse("1.0"), std::invalid_argument);
        CHECK_THROWS_AS(DecimalProb::parse("0"), std::invalid_argument);
        CHECK_THROWS_AS(DecimalProb::parse("abc"), std::invalid_argument);
    }
    SUBCASE("from_double uses the shortest round-trip text") {
        DecimalProb q = DecimalProb::from_double(0.05);
        CHECK(q.ceil_np(100) == 5);
        CHECK(q.floor_np(100) == 5);
        DecimalProb third = DecimalProb::from_double(1.0 / 3.0);
        CHECK(third.floor_np(3) == 0);  // 3 * 0.3333333333333333 < 1 exactly
    }
}

TEST_CASE("design_right") {
    SUBCASE("spec anchor n=100 p0=0.05 alpha=0.05") {
        TestDesign d = design_right(100, DecimalProb::parse("0.05"), 0.05);
        CHECK(d.m == 10);
        CHECK(std::fabs(d.poisson_level - 0.031828057306204812) < 1e-12);
        CHECK(std::fabs(d.exact_binomial_level - 0.028188294163416107) < 1e-12);
        CHECK(d.exact_binomial_level < d.poisson_level);
        // m = 9 would overshoot the level
        CHECK(static_cast<double>(oracle::poisson_sf_ld(5.0L, 9)) > 0.05);
    }
    SUBCASE("alpha = 1 binds at the hypothesis edge") {
        TestDesign d = design_right(10, DecimalProb::parse("0.5"), 1.0);
        CHECK(d.m == 6);
    }
    SUBCASE("empty admissible set") {
        CHECK_THROWS_AS(design_right(5, DecimalProb::parse("0.9"), 0.01),
                        InfeasibleDesign);
    }
    SUBCASE("level unattainable carries the smallest achievable level") {
        try {
            design_right(10, DecimalProb::parse("0.5"), 1e-6);
            FAIL("expected InfeasibleDesign");
        } catch (const InfeasibleDesign& e) {
            CHECK(e.smallest_achievable_level() ==
                  doctest::Approx(static_cast<double>(oracle::poisson_sf_ld(5.0L, 10))));
        }
    }
    SUBCASE("minimality of m across a sweep") {
        for (std::int64_t n : {20, 50, 100}) {
            for (const char* p0s : {"0.05", "0.1", "0.3"}) {
                DecimalProb p0 = DecimalProb::parse(p0s);
                for (double alpha : {0.2, 0.05, 0.01}) {
                    TestDesign d = design_right(n, p0, alpha);
                    CHECK(d.poisson_level <= alpha);
                    CHECK(d.m <= n);
                    CHECK(d.p0.m_ge_np_plus_1(d.m, n));
                    // m - 1 either violates the hypothesis or the level
                    bool hyp_ok = d.p0.m_ge_np_plus_1(d.m - 1, n);
                    if (hyp_ok) {
                        double level =
                            static_cast<double>(oracle::poisson_sf_ld(
                                static_cast<long double>(n) * p0.value(), d.m - 1));
                        CHECK(level > alpha);
                    }
                }
            }
        }
    }
}

TEST_CASE("design_left") {
    SUBCASE("spec anchor n=100 p0=0.1 alpha=0.05") {
        TestDesign d = design_left(100, DecimalProb::parse("0.1"), 0.05);
        CHECK(d.m == 4);
        CHECK(std::fabs(d.poisson_level - 0.029252688076961073) < 1e-12);
        CHECK(d.exact_binomial_level <= d.poisson_level + 1e-12);
    }
    SUBCASE("infeasible when even m = 0 overshoots") {
        try {
            design_left(10, DecimalProb::parse("0.01"), 0.05);
            FAIL("expected InfeasibleDesign");
        } catch (const InfeasibleDesign& e) {
            CHECK(e.smallest_achievable_level() ==
                  doctest::Approx(std::exp(-0.1)).epsilon(1e-12));
        }
    }
    SUBCASE("alpha = 1 binds at the hypothesis edge") {
        for (std::int64_t n : {7, 10, 33}) {
            for (const char* p0s : {"0.2", "0.5", "0.85"}) {
                DecimalProb p0 = DecimalProb::parse(p0s);
                TestDesign d = design_left(n, p0, 1.0);
                CHECK(d.m == p0.floor_np(n) + 1);
            }
        }
    }
}

TEST_CASE("design_two_sided") {
    SUBCASE("spec anchor n=100 p0=0.05 alpha=0.05") {
        TestDesign d = design_two_sided(100, DecimalProb::parse("0.05"), 0.05);
        CHECK(d.m1 == 1);
        CHECK(d.m2 == 10);
        CHECK(std::fabs(d.poisson_level -
                        (0.0067379469990854671 + 0.013695268598382938)) < 1e-12);
        CHECK(d.exact_binomial_level <= d.poisson_level + 1e-12);
    }
    SUBCASE("alpha = 1 pins the interval to floor/ceil of n p0") {
        TestDesign d = design_two_sided(40, DecimalProb::parse("0.11"), 1.0);
        CHECK(d.m1 == 4);  // floor(4.4)
        CHECK(d.m2 == 5);  // ceil(4.4)
    }
    SUBCASE("monotone in alpha: wider alpha never widens the interval") {
        DecimalProb p0 = DecimalProb::parse("0.3");
        std::int64_t prev_m1 = -1, prev_m2 = 1000;
        for (double alpha : {0.01, 0.05, 0.1, 0.5, 1.0}) {
            TestDesign d = design_two_sided(60, p0, alpha);
            CHECK(d.m1 >= prev_m1);
            CHECK(d.m2 <= prev_m2);
            prev_m1 = d.m1;
            prev_m2 = d.m2;
        }
    }
    SUBCASE("infeasible when n < m2 + 1") {
        CHECK_THROWS_AS(design_two_sided(8, DecimalProb::parse("0.5"), 0.05),
                        InfeasibleDesign);
    }
}

TEST_CASE("p_value_right") {
    DecimalProb p0 = DecimalProb::parse("0.05");
    SUBCASE("spec anchor") {
        RightPValue pv = p_value_right(100, p0, 10);
        CHECK(pv.conservative);
        CHECK(std::fabs(pv.value - 0.031828057306204812) < 1e-12);
    }
    SUBCASE("below threshold returns 1 with the flag down") {
        RightPValue pv = p_value_right(100, p0, 0);
        CHECK(pv.value == 1.0);
        CHECK_FALSE(pv.conservative);
    }
    SUBCASE("conservative against the exact binomial tail for all x >= n p0 + 1") {
        for (std::int64_t x = 6; x <= 100; ++x) {
            RightPValue pv = p_value_right(100, p0, x);
            REQUIRE(pv.conservative);
            CHECK(oracle::binom_sf_exact(100, x, 1, 20) < pv.value);
        }
    }
}

TEST_CASE("power_curve") {
    SUBCASE("right design: value at p0 is the exact level; nondecreasing") {
        TestDesign d = design_right(100, DecimalProb::parse("0.05"), 0.05);
        auto grid = linspace(0.01, 0.9, 60);
        auto power = power_curve(d, grid);
        for (std::size_t i = 0; i + 1 < power.size(); ++i)
            CHECK(power[i] <= power[i + 1] + 1e-12);
        double at_p0[] = {0.05};
        CHECK(power_curve(d, at_p0)[0] ==
              doctest::Approx(d.exact_binomial_level).epsilon(1e-15));
        // level guarantee on p <= p0
        auto low = linspace(0.001, 0.05, 50);
        for (double pw : power_curve(d, low)) CHECK(pw <= d.poisson_level + 1e-12);
    }
    SUBCASE("left design: nonincreasing, power vanishes as p -> 1") {
        TestDesign d = design_left(100, DecimalProb::parse("0.1"), 0.05);
        auto grid = linspace(0.05, 0.999, 40);
        auto power = power_curve(d, grid);
        for (std::size_t i = 0; i + 1 < power.size(); ++i)
            CHECK(power[i] >= power[i + 1] - 1e-12);
        CHECK(power.back() < 1e-12);
        // level guarantee on p >= p0
        auto high = linspace(0.1, 0.99, 50);
        for (double pw : power_curve(d, high)) CHECK(pw <= d.poisson_level + 1e-12);
    }
    SUBCASE("two-sided level at p0") {
        TestDesign d = design_two_sided(100, DecimalProb::parse("0.05"), 0.05);
        double at_p0[] = {0.05};
        CHECK(power_curve(d, at_p0)[0] <= d.poisson_level + 1e-12);
    }
    SUBCASE("grid validation") {
        TestDesign d = design_right(20, DecimalProb::parse("0.2"), 0.5);
        std::vector<double> empty;
        CHECK_THROWS_AS(power_curve(d, empty), std::invalid_argument);
        double bad[] = {0.5, 0.4};
        CHECK_THROWS_AS(power_curve(d, bad), std::invalid_argument);
    }
}

TEST_CASE("double-overload designs match the decimal path") {
    TestDesign a = design_right(100, 0.05, 0.05);
    TestDesign b = design_right(100, DecimalProb::parse("0.05"), 0.05);
    CHECK(a.m == b.m);
    CHECK(a.poisson_level == b.poisson_level);
}
