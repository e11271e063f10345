#pragma once

#include "poisson_approx/discrete_dist.hpp"

namespace poisson_approx {

// Total variation and Kolmogorov distances for one (binomial, Poisson) pair.
// Invariant: 0 <= kolmogorov <= tv <= 1.
struct DistanceReport {
    double tv = 0.0;
    double kolmogorov = 0.0;
    BinomialParams binom;
    PoissonParams poisson;
};

// d_tv(X_{n,p}, Pi_lambda) = (1/2) sum_{k=0}^{n} |P(X=k) - P(Pi=k)|
//                          + (1/2) P(Pi > n).
double tv_binom_poisson(const BinomialParams& b, const PoissonParams& q);

// d_K(X_{n,p}, Pi_lambda): both CDFs are step functions with jumps at the
// integers, so the sup is scanned over k in [0, n]; beyond n the difference
// is the Poisson tail, which is the k = n value.
double kolmogorov_binom_poisson(const BinomialParams& b, const PoissonParams& q);

// (1/2) sum_k |f_k - g_k|, the shorter vector zero-padded.
double tv_finite(const FinitePmf& f, const FinitePmf& g);

// Closed form of d_tv(X_{1,p}, Pi_lambda):
//   (|1-p-e^-l| + |p-l e^-l| + 1 - e^-l - l e^-l) / 2.
double bernoulli_poisson_tv_closed(double p, double lambda);

DistanceReport distance_report(const BinomialParams& b, const PoissonParams& q);

}  // namespace poisson_approx
