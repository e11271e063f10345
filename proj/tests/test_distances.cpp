#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "oracles.hpp"
#include "poisson_approx/bounds.hpp"
#include "poisson_approx/discrete_dist.hpp"
#include "poisson_approx/distances.hpp"
#include "poisson_approx/lambda_opt.hpp"

using namespace poisson_approx;

TEST_CASE("tv_binom_poisson: closed-form anchors") {
    // n = 1, p = 0.5, lambda = ln 2: the minimum-rate value p + (1-p)ln(1-p)
    double tv = tv_binom_poisson({1, 0.5}, {std::log(2.0)});
    CHECK(std::fabs(tv - 0.15342640972002735) < 1e-14);
    // n = 1, p = 0.8, lambda = 1: p - e^{-1}
    CHECK(std::fabs(tv_binom_poisson({1, 0.8}, {1.0}) - 0.43212055882855768) < 1e-14);
}

TEST_CASE("tv_binom_poisson matches the brute-force oracle") {
    for (std::int64_t n = 1; n <= 12; ++n) {
        for (auto [num, den] : {std::pair{1, 20}, {1, 10}, {3, 10}, {1, 2}, {4, 5}}) {
            double p = static_cast<double>(num) / den;
            for (double lambda : {0.2, 0.9, 2.4, 6.0}) {
                double got = tv_binom_poisson({n, p}, {lambda});
                double want = oracle::tv_binom_poisson_brute(n, num, den, lambda, 60);
                CHECK(std::fabs(got - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("kolmogorov_binom_poisson: oracle scan and d_K <= d_tv") {
    CHECK(std::fabs(kolmogorov_binom_poisson({20, 0.05}, {1.0}) -
                    0.0093935187629000872) < 1e-13);
    CHECK(std::fabs(kolmogorov_binom_poisson({20, 0.05}, {1.0}) -
                    oracle::kolmogorov_brute(20, 1, 20, 1.0)) < 1e-13);

    for (std::int64_t n : {1, 4, 17, 40}) {
        for (auto [num, den] : {std::pair{1, 10}, {2, 5}, {7, 10}}) {
            double p = static_cast<double>(num) / den;
            for (double lambda : {0.3, 1.0, 3.7}) {
                double dk = kolmogorov_binom_poisson({n, p}, {lambda});
                double tv = tv_binom_poisson({n, p}, {lambda});
                CHECK(std::fabs(dk - oracle::kolmogorov_brute(n, num, den, lambda)) < 1e-13);
                CHECK(dk <= tv + 1e-13);
            }
        }
    }
}

TEST_CASE("tv_finite: identities and Bernoulli distance") {
    FinitePmf f = FinitePmf::binomial({5, 0.4});
    CHECK(tv_finite(f, f) == 0.0);
    CHECK(tv_finite(FinitePmf::point_mass(0), FinitePmf::point_mass(1)) == 1.0);
    // d_tv(Bernoulli(p), Bernoulli(r)) = |p - r|
    for (double p : {0.1, 0.45, 0.8})
        for (double r : {0.05, 0.5, 0.93})
            CHECK(tv_finite(FinitePmf::bernoulli(p), FinitePmf::bernoulli(r)) ==
                  doctest::Approx(std::fabs(p - r)).epsilon(1e-13));
}

TEST_CASE("tv_finite: pseudo-metric and shift properties") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto random_pmf = [&](std::size_t len) {
        std::vector<double> v(len);
        double total = 0;
        for (auto& x : v) total += (x = u(rng) + 1e-3);
        for (auto& x : v) x /= total;
        return FinitePmf{v};
    };
    for (int trial = 0; trial < 60; ++trial) {
        FinitePmf f = random_pmf(2 + trial % 7);
        FinitePmf g = random_pmf(2 + (trial * 5) % 9);
        FinitePmf h = random_pmf(1 + (trial * 3) % 8);

        // triangle inequality
        CHECK(tv_finite(f, h) <= tv_finite(f, g) + tv_finite(g, h) + 1e-12);
        // shift property: convolving both sides with an independent z cannot
        // increase the distance
        FinitePmf z = random_pmf(1 + (trial * 7) % 6);
        double shifted = tv_finite(convolve(f, z).pmf, convolve(g, z).pmf);
        CHECK(shifted <= tv_finite(f, g) + 1e-12);
    }
}

TEST_CASE("bernoulli_poisson_tv_closed: anchors and agreement with the sum path") {
    CHECK(std::fabs(bernoulli_poisson_tv_closed(0.3, -std::log(0.7)) -
                    0.050327539242887335) < 1e-14);
    CHECK(std::fabs(bernoulli_poisson_tv_closed(0.9, 1.0) - 0.53212055882855768) < 1e-14);

    // full cross-check grid (200 x 200)
    double worst = 0.0;
    for (int i = 1; i <= 200; ++i) {
        double p = i / 201.0;
        for (int j = 1; j <= 200; ++j) {
            double lambda = 6.0 * j / 200.0;
            double diff = std::fabs(bernoulli_poisson_tv_closed(p, lambda) -
                                    tv_binom_poisson({1, p}, {lambda}));
            worst = std::max(worst, diff);
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("distance report invariant d_K <= d_tv and matching-mean bound") {
    for (std::int64_t n : {1, 10, 60}) {
        for (double p = 0.02; p <= 0.5; p += 0.06) {
            DistanceReport rep = distance_report({n, p}, {n * p});
            CHECK(rep.kolmogorov <= rep.tv + 1e-13);
            CHECK(rep.tv <= magic_bound(n, p) + 1e-12);
        }
    }
}
