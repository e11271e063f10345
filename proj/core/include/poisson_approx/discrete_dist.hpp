#pragma once

#include <cstdint>
#include <vector>

namespace poisson_approx {

// Binomial law with n trials and success probability p. The endpoints are
// exact point masses: p = 0 puts all mass at 0, p = 1 puts all mass at n.
struct BinomialParams {
    std::int64_t n = 1;
    double p = 0.5;
};

// Poisson law with rate lambda > 0.
struct PoissonParams {
    double lambda = 1.0;
};

// Explicit probability vector on {0, ..., N}: entries non-negative, total
// mass 1 within 1e-12 absolute.
struct FinitePmf {
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
    // Mass at k, zero outside the stored support.
    double at(std::size_t k) const { return k < probs.size() ? probs[k] : 0.0; }

    static FinitePmf point_mass(std::size_t at, std::size_t length = 0);
    static FinitePmf bernoulli(double p);
    static FinitePmf binomial(const BinomialParams& b);
};

// All validators throw std::invalid_argument on a violated invariant.
void validate(const BinomialParams& b);
void validate(const PoissonParams& q);
void validate(const FinitePmf& f);

struct Convolution {
    FinitePmf pmf;
    bool renormalized = false;  // raw mass drifted from 1 by more than 1e-12
};

// Pmf of the sum of independent variables with pmfs f and g.
// Output length = len(f) + len(g) - 1.
Convolution convolve(const FinitePmf& f, const FinitePmf& g);

// log P(X = k) for X ~ Binomial(n, p); -inf outside {0, ..., n}.
double binom_log_pmf(const BinomialParams& b, std::int64_t k);
// log P(X = k) for X ~ Poisson(lambda); -inf for k < 0.
double poisson_log_pmf(const PoissonParams& q, std::int64_t k);

double binom_pmf(const BinomialParams& b, std::int64_t k);
double poisson_pmf(const PoissonParams& q, std::int64_t k);

// Survival function P(X >= m). m <= 0 gives 1; m > n gives 0.
// Always sums the smaller tail, accumulating smallest terms first.
double binom_sf(const BinomialParams& b, std::int64_t m);
// P(X <= k).
double binom_cdf(const BinomialParams& b, std::int64_t k);

// P(X >= m) for the Poisson law; the series is truncated once a term drops
// below 1e-18 of the partial sum.
double poisson_sf(const PoissonParams& q, std::int64_t m);
// P(X <= k).
double poisson_cdf(const PoissonParams& q, std::int64_t k);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation with
// the symmetry switch at x = a/(a+b). Absolute accuracy about 1e-13 on the
// integer-parameter ranges exercised here.
double reg_inc_beta(double a, double b, double x);

namespace detail {

// log(n!) - log(sqrt(2 pi n) (n/e)^n), the Stirling series remainder.
double stirlerr(double n);
// x log(x/np) + np - x, evaluated without cancellation near x = np.
double bd0(double x, double np);
// log C(n, k) assembled from same-sign pieces (no large cancellations).
double log_choose(double n, double k);
// log B(a, b); exact combinatorial route for integer a, b, lgamma otherwise.
double log_beta(double a, double b);
// Compensated (Kahan) accumulator for long plain-order sums.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace detail

}  // namespace poisson_approx
