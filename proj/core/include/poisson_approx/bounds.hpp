#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poisson_approx/discrete_dist.hpp"

namespace poisson_approx {

enum class BoundName {
    magic,          // (1 - e^{-np}) p          vs d_tv(X_{n,p}, Pi_{np})
    magic_np2,      // n p^2, the weaker cap    vs the same distance
    triangle,       // |np - l| + (1-e^{-l}) l/n  vs d_tv(X_{n,p}, Pi_l)
    serfling,       // n (p + (1-p) ln(1-p))    vs d_tv(X_{n,p}, Pi_{n lc})
    corollary,      // piecewise n-scaled form  vs d_tv(X_{n,p}, Pi_{n l*})
    borisov_lower,  // (q - p)/(1 - p) clamped  vs P(X >= m)
    borisov_upper,  // q/(1 - p) clamped        vs P(X >= m)
};

std::string to_string(BoundName name);

// One certified comparison: slack = bound - exact for upper bounds and
// exact - bound for lower bounds; certified reports have slack >= -1e-12.
struct BoundReport {
    BoundName name;
    double bound_value = 0.0;
    double exact_value = 0.0;
    double slack = 0.0;
};

// (1 - e^{-np}) p, bound on d_tv(X_{n,p}, Pi_{np}). Requires p in [0, 1).
double magic_bound(std::int64_t n, double p);
// n p^2, the strictly weaker cap in the same display.
double magic_np2_cap(std::int64_t n, double p);

// |np - lambda| + (1 - e^{-lambda}) lambda / n, bound on d_tv(X_{n,p}, Pi_l).
// Throws if lambda >= n: the intermediate Binomial(n, lambda/n) must exist.
double triangle_bound(std::int64_t n, double p, double lambda);

// n (p + (1-p) ln(1-p)), bound on d_tv(X_{n,p}, Pi_{n lambda_circ(p)}).
double serfling_bound(std::int64_t n, double p);

// Piecewise bound on d_tv(X_{n,p}, Pi_{n lambda_star(p)}):
// n (p + (1-p) ln(1-p)) for p <= 1 - 1/e, n (p - 1/e) otherwise.
double corollary_bound(std::int64_t n, double p);

struct ProbabilityEnvelope {
    double lower = 0.0;
    double upper = 1.0;
};

// Two-sided envelope for P(X_{n,p} in A) given q = P(Pi_{np} in A):
// [max(0, (q-p)/(1-p)), min(1, q/(1-p))].
ProbabilityEnvelope borisov_envelope(std::int64_t n, double p,
                                     double event_prob_poisson);

// Certified table for the CLI: TV bounds at their reference rates, the
// triangle bound when lambda is given, and the tail-event envelope when a
// threshold m is given.
std::vector<BoundReport> bound_table(std::int64_t n, double p,
                                     std::optional<double> lambda,
                                     std::optional<std::int64_t> m);

}  // namespace poisson_approx
