#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace poisson_approx {

// Roots attached to the Bernoulli-Poisson TV profile for a given p:
// lambda1 = -ln(1-p) always; lambda2, lambda3 are the roots of
// lambda e^{-lambda} = p in (0,1] and [1,inf), present iff p <= 1/e.
// Ordering when present: 0 < lambda1 < lambda2 <= 1 <= lambda3 < inf.
struct LambdaBreakpoints {
    double lambda1 = 0.0;
    std::optional<double> lambda2;
    std::optional<double> lambda3;
};

// -ln(1-p), the rate matching the Poisson zero probability to 1-p.
double lambda_circ(double p);

// min(lambda_circ(p), 1): the global TV-minimizing rate for Bernoulli(p).
double lambda_star(double p);

// p + (1-p) ln(1-p); behaves like p^2/2 as p -> 0.
double delta_p(double p);

// min over lambda > 0 of d_tv(X_{1,p}, Pi_lambda):
//   p + (1-p) ln(1-p)  for p <= 1 - 1/e,
//   p - 1/e            for p >= 1 - 1/e.
double min_tv_value(double p);

// Breakpoints via bisection to 1e-13; the double root at p = 1/e returns
// lambda2 = lambda3 = 1 exactly.
LambdaBreakpoints breakpoints(double p);

// d_tv(X_{1,p}, Pi_lambda) over a strictly ascending grid (closed form).
std::vector<double> tv_profile(double p, std::span<const double> lambdas);

// Result of scanning a TV profile for the decreasing-then-increasing shape.
// Successive differences are classified against a 1e-12 flatness tolerance;
// any flat step outside the single descent-to-ascent transition, or any
// descent after the ascent began, is a violation.
struct ProfileCertification {
    bool unimodal = false;
    std::size_t argmin_index = 0;
    std::vector<std::size_t> violation_indices;
};

ProfileCertification certify_tv_profile(double p, std::span<const double> lambdas);

}  // namespace poisson_approx
