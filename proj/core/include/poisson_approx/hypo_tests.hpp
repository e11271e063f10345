#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "poisson_approx/decimal.hpp"

namespace poisson_approx {

enum class TestDirection { right, left, two_sided };

std::string to_string(TestDirection d);

// A designed conservative test of H0: p = p0. The Poisson level dominates
// the exact binomial level: exact_binomial_level <= poisson_level + 1e-12.
struct TestDesign {
    TestDirection direction = TestDirection::right;
    std::int64_t n = 1;
    DecimalProb p0;
    double alpha = 0.05;          // requested level
    std::int64_t m = -1;          // critical value (one-sided)
    std::int64_t m1 = -1;         // acceptance interval (two-sided)
    std::int64_t m2 = -1;
    double poisson_level = 0.0;   // alpha_+, alpha_-, or alpha_+-
    double exact_binomial_level = 0.0;
};

// No admissible critical value meets the requested level. Carries the
// smallest level the admissible set can achieve (NaN when the set is empty).
class InfeasibleDesign : public std::runtime_error {
public:
    InfeasibleDesign(const std::string& what, double smallest_achievable)
        : std::runtime_error(what), smallest_achievable_(smallest_achievable) {}
    double smallest_achievable_level() const { return smallest_achievable_; }

private:
    double smallest_achievable_;
};

// Reject when X >= m, m the smallest integer with m >= n p0 + 1, m <= n and
// P(Pi_{n p0} >= m) <= alpha.
TestDesign design_right(std::int64_t n, const DecimalProb& p0, double alpha);

// Reject when X <= m, m the largest integer with 0 <= m <= n p0 + 1 and
// P(Pi_{n p0} <= m) <= alpha.
TestDesign design_left(std::int64_t n, const DecimalProb& p0, double alpha);

// Reject outside [m1, m2]; alpha is split evenly between the tails:
// m1 = largest integer <= n p0 with P(Pi < m1) <= alpha/2,
// m2 = smallest integer >= n p0 with P(Pi > m2) <= alpha/2; needs n >= m2+1.
TestDesign design_two_sided(std::int64_t n, const DecimalProb& p0, double alpha);

TestDesign design_right(std::int64_t n, double p0, double alpha);
TestDesign design_left(std::int64_t n, double p0, double alpha);
TestDesign design_two_sided(std::int64_t n, double p0, double alpha);

// Conservative right-tail p-value. Valid (conservative == true) only when
// x >= n p0 + 1, where the Poisson tail strictly dominates the binomial
// tail; below that threshold the value is 1 and conservative == false.
struct RightPValue {
    double value = 1.0;
    bool conservative = false;
};

RightPValue p_value_right(std::int64_t n, const DecimalProb& p0,
                          std::int64_t x_observed);
RightPValue p_value_right(std::int64_t n, double p0, std::int64_t x_observed);

// Rejection probability E delta(X_{n,p}) over an ascending grid of p values.
std::vector<double> power_curve(const TestDesign& design,
                                std::span<const double> p_grid);

}  // namespace poisson_approx
