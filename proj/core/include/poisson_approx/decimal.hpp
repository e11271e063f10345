#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace poisson_approx {

// A probability given as a decimal literal, kept as an exact fraction
// num / 10^exp10 so that hypothesis comparisons against integer critical
// values (m >= n p + 1 and friends) never suffer floating-point boundary
// misclassification: 100 * 0.07 rounds to 7.000000000000001 in doubles, but
// the comparisons here see exactly 7.
class DecimalProb {
public:
    DecimalProb() = default;

    // Accepts plain decimals ("0.05", ".3", "0.125e-1"). Throws
    // std::invalid_argument unless the value lies in (0, 1).
    static DecimalProb parse(std::string_view text);

    // Uses the shortest round-trip decimal representation of p.
    static DecimalProb from_double(double p);

    double value() const { return value_; }
    std::string text() const;

    // Exact comparisons of integers against multiples of p.
    bool m_ge_np_plus_1(std::int64_t m, std::int64_t n) const;  // m >= n p + 1
    bool m_le_np_plus_1(std::int64_t m, std::int64_t n) const;  // m <= n p + 1
    bool m_le_np(std::int64_t m, std::int64_t n) const;         // m <= n p
    bool m_ge_np(std::int64_t m, std::int64_t n) const;         // m >= n p
    std::int64_t floor_np(std::int64_t n) const;                // floor(n p)
    std::int64_t ceil_np(std::int64_t n) const;                 // ceil(n p)

private:
    std::int64_t num_ = 1;   // numerator
    std::int64_t den_ = 10;  // power of ten
    double value_ = 0.1;

    // sign of (m - n p), exact.
    int compare_m_np(std::int64_t m, std::int64_t n) const;
};

}  // namespace poisson_approx
