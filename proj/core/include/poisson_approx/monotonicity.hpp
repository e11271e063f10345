#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace poisson_approx {

enum class MonotonicityClaim { t1i, t1ii, c1i, c1ii, c2, t2, c3, mlr };

std::string to_string(MonotonicityClaim claim);

// Certification outcome for one claim over one sweep. Strictness margins
// are relative: (difference) / max(|a|, |b|). A claim is certified when no
// violations were recorded and every required strict gap cleared 1e-10;
// sub-margin gaps are recorded as violations ("numerically flat"), never
// silently passed.
struct MonotonicityReport {
    MonotonicityClaim claim;
    std::size_t grid_size = 0;
    std::vector<std::string> violations;
    double min_margin = std::numeric_limits<double>::infinity();

    bool certified() const {
        return violations.empty() && min_margin > strictness_margin;
    }
    static constexpr double strictness_margin = 1e-10;
};

// Delta_n = (n+1) J_{n+1} - (n-m+1) J_n with
// J_n = Integral_{1-p_n}^{1} t^{n-m} (1-t)^{m-1} dt, evaluated through the
// regularized incomplete beta in log space with a signed combination.
// sign(Delta_n) = sign(P(X_{n+1,p_next} >= m) - P(X_{n,p_n} >= m)), and
// C(n, m-1) Delta_n equals that difference exactly.
double delta_n(std::int64_t n, std::int64_t m, double p_n, double p_next);

enum class Theorem1Verdict { greater, less, not_applicable };

// One hypothesis classification plus the observed tail comparison.
struct Theorem1Check {
    Theorem1Verdict verdict = Theorem1Verdict::not_applicable;
    double sf_n = 0.0;     // P(X_{n,p_n} >= m)
    double sf_next = 0.0;  // P(X_{n+1,p_next} >= m)
    // Relative gap in the predicted direction; NaN when not applicable.
    double margin = std::numeric_limits<double>::quiet_NaN();
    // Predicted strict ordering observed beyond the strictness margin.
    bool consistent = true;
};

// Requires p_n > p_next (throws otherwise) and 1 <= m <= n.
// Verdict greater: (n+1) p_next >= n p_n and m >= 1 + n p_n.
// Verdict less:    (n+1) p_next <= n p_n and m <= 1 + n p_next.
Theorem1Check check_theorem1(std::int64_t n, std::int64_t m, double p_n,
                             double p_next);

enum class SequenceDirection { increasing, decreasing, constant };

// P(... >= m)-type sequence indexed by n = n_begin, ..., together with its
// Poisson limit and the predicted approach direction. "increasing" also
// predicts every term strictly below the limit, "decreasing" strictly above.
struct TailSequence {
    MonotonicityClaim claim;
    std::int64_t n_begin = 1;
    std::vector<double> terms;
    double limit = 0.0;
    SequenceDirection direction = SequenceDirection::increasing;
};

// P(X_{n, lambda/n} >= m) for n = max(m, ceil(lambda)) .. n_max, with limit
// P(Pi_lambda >= m). Increasing when m >= 1 + lambda, decreasing when
// m <= lambda; other m are rejected (no prediction for them).
TailSequence corollary1_sequence(double lambda, std::int64_t m,
                                 std::int64_t n_max);

// P(m1 <= X_{n, lambda/n} <= m2) for n = m2+1 .. n_max; requires
// m1 <= lambda <= m2. Decreasing to P(m1 <= Pi_lambda <= m2).
TailSequence corollary2_sequence(double lambda, std::int64_t m1,
                                 std::int64_t m2, std::int64_t n_max);

// P(X_{n, 1-e^{-lambda/n}} >= m) for n = max(1, m-1) .. n_max. Strictly
// increasing to P(Pi_lambda >= m) for m >= 2; for m = 1 the sequence is
// exactly constant at 1 - e^{-lambda}.
TailSequence theorem2_sequence(double lambda, std::int64_t m,
                               std::int64_t n_max);

// Checks a TailSequence term by term: strict steps in the predicted
// direction, every term on the predicted side of the limit, |term - limit|
// decreasing. Constant sequences are held to 1e-14 absolute.
MonotonicityReport certify_sequence(const TailSequence& seq);

// delta_{n,k} = P_{n+1,k+1} P_{n,k} - P_{n,k+1} P_{n+1,k} for the family
// p_n = 1 - e^{-lambda/n}, with the factored tilde form whose sign it shares.
struct MlrCell {
    std::int64_t n = 0;
    std::int64_t k = 0;
    double delta_nk = 0.0;
    double tilde_delta_nk = 0.0;
};

std::vector<MlrCell> mlr_matrix(std::int64_t n, double lambda);

// (e^{-c} - 1 + c) / c, increasing from 0 to 1 on c > 0; the asymptotic
// boundary below which k ~ a n, lambda ~ c n forces delta_{n,k} < 0.
double mlr_h(double c);

struct MlrViolation {
    std::int64_t n = 0;
    std::int64_t k = 0;
    double delta = 0.0;
};

// Scans n = n_start, n_start+1, ..., n_cap with k = floor(a n), lambda = c n
// for the first delta_{n,k} < -1e-12. Requires a < h(c) (throws otherwise);
// returns nullopt when the cap is exhausted.
std::optional<MlrViolation> find_mlr_violation(double c, double a,
                                               std::int64_t n_start,
                                               std::int64_t n_cap = 10000);

// ---- sweep drivers (deterministic; thread count never changes results) ----

// Random admissible tuples for one part of Theorem 1, fixed seed.
MonotonicityReport certify_theorem1(Theorem1Verdict part, std::size_t count,
                                    std::uint64_t seed, unsigned threads = 0);

// Corollary 1 over all applicable m <= m_max per lambda; returns the
// increasing-case and decreasing-case reports.
std::vector<MonotonicityReport> certify_corollary1(std::span<const double> lambdas,
                                                   std::int64_t m_max,
                                                   std::int64_t n_max,
                                                   unsigned threads = 0);

// Corollary 2 over all pairs m1 <= lambda <= m2 <= m_max.
MonotonicityReport certify_corollary2(std::span<const double> lambdas,
                                      std::int64_t m_max, std::int64_t n_max,
                                      unsigned threads = 0);

// Theorem 2 (pairwise strict increase, m = 1 constancy) and Corollary 3
// (below-limit side with shrinking gap) over m <= m_max per lambda.
std::vector<MonotonicityReport> certify_theorem2(std::span<const double> lambdas,
                                                 std::int64_t m_max,
                                                 std::int64_t n_max,
                                                 unsigned threads = 0);

struct MlrCase {
    double c = 1.0;
    double a = 0.2;
};

// Sign agreement between delta and tilde-delta across mlr_matrix sweeps plus
// a found violation for every requested (c, a) case.
MonotonicityReport certify_mlr(std::span<const MlrCase> cases,
                               std::int64_t matrix_n_max, std::int64_t n_cap,
                               unsigned threads = 0);

}  // namespace poisson_approx
