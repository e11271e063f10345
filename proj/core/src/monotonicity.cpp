#include "poisson_approx/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "poisson_approx/discrete_dist.hpp"
#include "poisson_approx/parallel.hpp"

namespace poisson_approx {

namespace {

constexpr double kMargin = MonotonicityReport::strictness_margin;  // 1e-10
constexpr double kConstancyTol = 1e-14;
constexpr double kMlrThreshold = 1e-12;   // delta below -this counts as found
constexpr double kSignAgreeFloor = 1e-9;  // |tilde| needed for a sign check

template <typename... Args>
std::string strf(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return std::string(buf);
}

double rel_gap(double hi, double lo) {
    double scale = std::max({std::fabs(hi), std::fabs(lo),
                             std::numeric_limits<double>::min()});
    return (hi - lo) / scale;
}

// splitmix64: a pinned per-index generator, so sweeps are reproducible and
// independent of how work is split across threads.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        uniform() * static_cast<double>(hi - lo + 1));
    }
};

void merge_into(MonotonicityReport& into, const MonotonicityReport& part) {
    into.grid_size += part.grid_size;
    into.violations.insert(into.violations.end(), part.violations.begin(),
                           part.violations.end());
    into.min_margin = std::min(into.min_margin, part.min_margin);
}

}  // namespace

std::string to_string(MonotonicityClaim claim) {
    switch (claim) {
        case MonotonicityClaim::t1i: return "T1i";
        case MonotonicityClaim::t1ii: return "T1ii";
        case MonotonicityClaim::c1i: return "C1i";
        case MonotonicityClaim::c1ii: return "C1ii";
        case MonotonicityClaim::c2: return "C2";
        case MonotonicityClaim::t2: return "T2";
        case MonotonicityClaim::c3: return "C3";
        case MonotonicityClaim::mlr: return "MLR";
    }
    return "unknown";
}

double delta_n(std::int64_t n, std::int64_t m, double p_n, double p_next) {
    if (n < 1 || m < 1 || m > n)
        throw std::invalid_argument("delta_n: need 1 <= m <= n");
    if (!(p_n > 0.0 && p_n < 1.0) || !(p_next > 0.0 && p_next < 1.0))
        throw std::invalid_argument("delta_n: probabilities must be in (0, 1)");
    double a = static_cast<double>(n - m + 1);
    double dm = static_cast<double>(m);
    // (n-m+1) B(n-m+1, m) = (n+1) B(n-m+2, m): both terms of Delta_n share
    // this positive factor, leaving a signed difference of regularized
    // incomplete betas.
    double log_common = std::log(a) + detail::log_beta(a, dm);
    double i_n = reg_inc_beta(dm, a, p_n);
    double i_next = reg_inc_beta(dm, a + 1.0, p_next);
    return std::exp(log_common) * (i_next - i_n);
}

Theorem1Check check_theorem1(std::int64_t n, std::int64_t m, double p_n,
                             double p_next) {
    if (n < 1 || m < 1 || m > n)
        throw std::invalid_argument("check_theorem1: need 1 <= m <= n");
    if (!(p_n >= 0.0 && p_n <= 1.0) || !(p_next >= 0.0 && p_next <= 1.0))
        throw std::invalid_argument("check_theorem1: probabilities must be in [0, 1]");
    if (!(p_n > p_next))
        throw std::invalid_argument("check_theorem1: requires p_n > p_next");

    double nn = static_cast<double>(n);
    double md = static_cast<double>(m);
    Theorem1Check out;
    out.sf_n = binom_sf({n, p_n}, m);
    out.sf_next = binom_sf({n + 1, p_next}, m);

    bool hyp_i = (nn + 1.0) * p_next >= nn * p_n && md >= 1.0 + nn * p_n;
    bool hyp_ii = (nn + 1.0) * p_next <= nn * p_n && md <= 1.0 + nn * p_next;
    if (hyp_i) {
        out.verdict = Theorem1Verdict::greater;
        out.margin = rel_gap(out.sf_next, out.sf_n);
    } else if (hyp_ii) {
        out.verdict = Theorem1Verdict::less;
        out.margin = rel_gap(out.sf_n, out.sf_next);
    } else {
        out.verdict = Theorem1Verdict::not_applicable;
        return out;
    }
    out.consistent = out.margin > kMargin;
    return out;
}

TailSequence corollary1_sequence(double lambda, std::int64_t m,
                                 std::int64_t n_max) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("corollary1_sequence: lambda must be positive");
    if (m < 1) throw std::invalid_argument("corollary1_sequence: m must be >= 1");
    TailSequence seq;
    if (static_cast<double>(m) >= 1.0 + lambda) {
        seq.claim = MonotonicityClaim::c1i;
        seq.direction = SequenceDirection::increasing;
    } else if (static_cast<double>(m) <= lambda) {
        seq.claim = MonotonicityClaim::c1ii;
        seq.direction = SequenceDirection::decreasing;
    } else {
        throw std::invalid_argument(
            "corollary1_sequence: no prediction for lambda < m < 1 + lambda");
    }
    seq.n_begin = std::max<std::int64_t>(
        m, static_cast<std::int64_t>(std::ceil(lambda)));
    if (n_max < seq.n_begin)
        throw std::invalid_argument("corollary1_sequence: n_max below first index");
    seq.terms.reserve(static_cast<std::size_t>(n_max - seq.n_begin + 1));
    for (std::int64_t n = seq.n_begin; n <= n_max; ++n)
        seq.terms.push_back(binom_sf({n, lambda / static_cast<double>(n)}, m));
    seq.limit = poisson_sf({lambda}, m);
    return seq;
}

TailSequence corollary2_sequence(double lambda, std::int64_t m1,
                                 std::int64_t m2, std::int64_t n_max) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("corollary2_sequence: lambda must be positive");
    if (m1 < 1 || m2 < m1)
        throw std::invalid_argument("corollary2_sequence: need 1 <= m1 <= m2");
    if (!(static_cast<double>(m1) <= lambda && lambda <= static_cast<double>(m2)))
        throw std::invalid_argument(
            "corollary2_sequence: hypothesis m1 <= lambda <= m2 violated");
    TailSequence seq;
    seq.claim = MonotonicityClaim::c2;
    seq.direction = SequenceDirection::decreasing;
    seq.n_begin = m2 + 1;
    if (n_max < seq.n_begin)
        throw std::invalid_argument("corollary2_sequence: n_max below first index");
    for (std::int64_t n = seq.n_begin; n <= n_max; ++n) {
        BinomialParams b{n, lambda / static_cast<double>(n)};
        seq.terms.push_back(binom_sf(b, m1) - binom_sf(b, m2 + 1));
    }
    seq.limit = poisson_sf({lambda}, m1) - poisson_sf({lambda}, m2 + 1);
    return seq;
}

TailSequence theorem2_sequence(double lambda, std::int64_t m,
                               std::int64_t n_max) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("theorem2_sequence: lambda must be positive");
    if (m < 1) throw std::invalid_argument("theorem2_sequence: m must be >= 1");
    TailSequence seq;
    seq.claim = MonotonicityClaim::t2;
    seq.n_begin = std::max<std::int64_t>(1, m - 1);
    if (n_max < seq.n_begin)
        throw std::invalid_argument("theorem2_sequence: n_max below first index");
    for (std::int64_t n = seq.n_begin; n <= n_max; ++n) {
        double p = -std::expm1(-lambda / static_cast<double>(n));
        seq.terms.push_back(binom_sf({n, p}, m));
    }
    if (m == 1) {
        seq.direction = SequenceDirection::constant;
        seq.limit = -std::expm1(-lambda);
    } else {
        seq.direction = SequenceDirection::increasing;
        seq.limit = poisson_sf({lambda}, m);
    }
    return seq;
}

namespace {

// Strict steps in the predicted direction (or constancy for constant
// sequences). Flat steps are failures, never passes.
void check_steps(const TailSequence& seq, MonotonicityReport& rep) {
    const auto& t = seq.terms;
    if (seq.direction == SequenceDirection::constant) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            double dev = std::fabs(t[i] - seq.limit);
            if (dev > kConstancyTol)
                rep.violations.push_back(
                    strf("%s: n=%lld term deviates from constant by %.3e",
                         to_string(seq.claim).c_str(),
                         static_cast<long long>(seq.n_begin + static_cast<std::int64_t>(i)),
                         dev));
        }
        return;
    }
    bool up = seq.direction == SequenceDirection::increasing;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        double margin = up ? rel_gap(t[i + 1], t[i]) : rel_gap(t[i], t[i + 1]);
        if (margin <= kMargin) {
            rep.violations.push_back(strf(
                "%s: step n=%lld->%lld not strictly %s (rel margin %.3e)",
                to_string(seq.claim).c_str(),
                static_cast<long long>(seq.n_begin + static_cast<std::int64_t>(i)),
                static_cast<long long>(seq.n_begin + static_cast<std::int64_t>(i) + 1),
                up ? "increasing" : "decreasing", margin));
        } else {
            rep.min_margin = std::min(rep.min_margin, margin);
        }
    }
}

// Every term strictly on the predicted side of the limit, with the absolute
// gap to the limit shrinking along the sequence.
void check_side(const TailSequence& seq, MonotonicityReport& rep) {
    if (seq.direction == SequenceDirection::constant) return;
    const auto& t = seq.terms;
    bool up = seq.direction == SequenceDirection::increasing;
    double prev_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.size(); ++i) {
        double margin = up ? rel_gap(seq.limit, t[i]) : rel_gap(t[i], seq.limit);
        if (margin <= kMargin) {
            rep.violations.push_back(strf(
                "%s: n=%lld term not strictly %s the Poisson limit (rel margin %.3e)",
                to_string(seq.claim).c_str(),
                static_cast<long long>(seq.n_begin + static_cast<std::int64_t>(i)),
                up ? "below" : "above", margin));
        } else {
            rep.min_margin = std::min(rep.min_margin, margin);
        }
        double gap = std::fabs(t[i] - seq.limit);
        if (i > 0 && !(gap < prev_gap)) {
            rep.violations.push_back(strf(
                "%s: n=%lld |term - limit| did not shrink",
                to_string(seq.claim).c_str(),
                static_cast<long long>(seq.n_begin + static_cast<std::int64_t>(i))));
        }
        prev_gap = gap;
    }
}

}  // namespace

MonotonicityReport certify_sequence(const TailSequence& seq) {
    MonotonicityReport rep;
    rep.claim = seq.claim;
    rep.grid_size = seq.terms.size();
    check_steps(seq, rep);
    check_side(seq, rep);
    return rep;
}

std::vector<MlrCell> mlr_matrix(std::int64_t n, double lambda) {
    if (n < 1) throw std::invalid_argument("mlr_matrix: n must be >= 1");
    if (!(lambda > 0.0))
        throw std::invalid_argument("mlr_matrix: lambda must be positive");
    double nn = static_cast<double>(n);
    double p_n = -std::expm1(-lambda / nn);
    double p_next = -std::expm1(-lambda / (nn + 1.0));
    double r_n = std::expm1(lambda / nn);            // p_n / (1 - p_n)
    double r_next = std::expm1(lambda / (nn + 1.0)); // p_{n+1} / (1 - p_{n+1})
    BinomialParams row_n{n, p_n};
    BinomialParams row_next{n + 1, p_next};

    std::vector<MlrCell> cells;
    cells.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        double kd = static_cast<double>(k);
        // tilde = (n+1-k) r_{n+1} - (n-k) r_n; delta factors through it:
        // delta = P_{n,k} P_{n+1,k} tilde / (k+1).
        double tilde = -(nn - kd) * (r_n - r_next) + r_next;
        double log_pref = binom_log_pmf(row_n, k) + binom_log_pmf(row_next, k) -
                          std::log(kd + 1.0);
        cells.push_back(MlrCell{n, k, std::exp(log_pref) * tilde, tilde});
    }
    return cells;
}

double mlr_h(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("mlr_h: c must be positive");
    return (c + std::expm1(-c)) / c;
}

std::optional<MlrViolation> find_mlr_violation(double c, double a,
                                               std::int64_t n_start,
                                               std::int64_t n_cap) {
    if (!(c > 0.0)) throw std::invalid_argument("find_mlr_violation: c must be positive");
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("find_mlr_violation: a must be in (0, 1)");
    if (!(a < mlr_h(c)))
        throw std::invalid_argument(
            "find_mlr_violation: hypothesis a < h(c) violated; no violation "
            "is guaranteed in this regime");
    for (std::int64_t n = std::max<std::int64_t>(1, n_start); n <= n_cap; ++n) {
        std::int64_t k = static_cast<std::int64_t>(
            std::floor(a * static_cast<double>(n)));
        k = std::min(k, n - 1);
        if (k < 0) continue;
        double lambda = c * static_cast<double>(n);
        double nn = static_cast<double>(n);
        double p_n = -std::expm1(-lambda / nn);
        double p_next = -std::expm1(-lambda / (nn + 1.0));
        double r_n = std::expm1(lambda / nn);
        double r_next = std::expm1(lambda / (nn + 1.0));
        double kd = static_cast<double>(k);
        double tilde = -(nn - kd) * (r_n - r_next) + r_next;
        double log_pref = binom_log_pmf({n, p_n}, k) +
                          binom_log_pmf({n + 1, p_next}, k) - std::log(kd + 1.0);
        double delta = std::exp(log_pref) * tilde;
        if (delta < -kMlrThreshold) return MlrViolation{n, k, delta};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sweep drivers
// ---------------------------------------------------------------------------

namespace {

struct Theorem1Tuple {
    std::int64_t n;
    std::int64_t m;
    double p_n;
    double p_next;
};

// Draws an admissible tuple for the requested part. Windows keep the
// compared tails in a range double precision can resolve: m stays within
// three standard deviations of the relevant mean and the success
// probabilities away from the extremes. Boundary cases (equal products,
// m at the hypothesis edge) are drawn with positive probability.
Theorem1Tuple draw_theorem1_tuple(Theorem1Verdict part, SplitMix& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::int64_t n = rng.uniform_int(part == Theorem1Verdict::greater ? 2 : 1, 60);
        double nn = static_cast<double>(n);
        double p_n = 0.10 + 0.80 * rng.uniform();
        double bound = nn * p_n / (nn + 1.0);
        bool at_boundary = rng.uniform() < 0.10;
        double p_next;
        std::int64_t m_lo, m_hi;
        if (part == Theorem1Verdict::greater) {
            p_next = at_boundary
                         ? bound
                         : bound + (0.05 + 0.94 * rng.uniform()) * (p_n - bound);
            double sigma = std::sqrt(nn * p_n * (1.0 - p_n));
            m_lo = static_cast<std::int64_t>(std::ceil(1.0 + nn * p_n));
            m_hi = std::min<std::int64_t>(
                n, static_cast<std::int64_t>(std::floor(nn * p_n + 3.0 * sigma + 1.0)));
        } else {
            p_next = at_boundary ? bound : bound * (0.55 + 0.44 * rng.uniform());
            double mean_next = (nn + 1.0) * p_next;
            double sigma = std::sqrt(mean_next * (1.0 - p_next));
            m_lo = std::max<std::int64_t>(
                1, static_cast<std::int64_t>(std::ceil(mean_next - 3.0 * sigma)));
            m_hi = std::min<std::int64_t>(
                n, static_cast<std::int64_t>(std::floor(1.0 + nn * p_next)));
        }
        if (m_lo > m_hi) continue;
        std::int64_t m = rng.uniform_int(m_lo, m_hi);
        if (m < 1 || m > n || !(p_n > p_next)) continue;

        // Classification runs on the same doubles the certification uses, so
        // a boundary draw that rounds out of the hypothesis is redrawn.
        double md = static_cast<double>(m);
        bool hyp_i = (nn + 1.0) * p_next >= nn * p_n && md >= 1.0 + nn * p_n;
        bool hyp_ii = (nn + 1.0) * p_next <= nn * p_n && md <= 1.0 + nn * p_next;
        if (part == Theorem1Verdict::greater ? !hyp_i : !hyp_ii) continue;

        // Scale guard (magnitudes only, never the comparison outcome): both
        // tails must be resolvable in double precision.
        double sf_n = binom_sf({n, p_n}, m);
        if (!(sf_n > 1e-8 && sf_n < 1.0 - 1e-8)) continue;
        return Theorem1Tuple{n, m, p_n, p_next};
    }
    throw std::logic_error("theorem1 sampler failed to produce an admissible tuple");
}

}  // namespace

MonotonicityReport certify_theorem1(Theorem1Verdict part, std::size_t count,
                                    std::uint64_t seed, unsigned threads) {
    if (part == Theorem1Verdict::not_applicable)
        throw std::invalid_argument("certify_theorem1: pick part greater or less");
    MonotonicityReport rep;
    rep.claim = part == Theorem1Verdict::greater ? MonotonicityClaim::t1i
                                                 : MonotonicityClaim::t1ii;
    rep.grid_size = count;

    std::vector<double> margins(count);
    std::vector<std::string> failures(count);
    parallel_for(count, threads, [&](std::size_t i) {
        SplitMix rng(seed ^ (0x6a09e667f3bcc909ULL + 2 * i));
        Theorem1Tuple t = draw_theorem1_tuple(part, rng);
        Theorem1Check chk = check_theorem1(t.n, t.m, t.p_n, t.p_next);
        margins[i] = chk.margin;
        if (chk.verdict != (part == Theorem1Verdict::greater
                                ? Theorem1Verdict::greater
                                : Theorem1Verdict::less)) {
            failures[i] = strf("tuple %zu reclassified unexpectedly", i);
        } else if (!chk.consistent) {
            failures[i] = strf(
                "n=%lld m=%lld p_n=%.17g p_next=%.17g: predicted %s, sf_n=%.17g "
                "sf_next=%.17g rel margin %.3e",
                static_cast<long long>(t.n), static_cast<long long>(t.m), t.p_n,
                t.p_next, part == Theorem1Verdict::greater ? "greater" : "less",
                chk.sf_n, chk.sf_next, chk.margin);
        }
    });
    for (std::size_t i = 0; i < count; ++i) {
        if (!failures[i].empty())
            rep.violations.push_back(failures[i]);
        else
            rep.min_margin = std::min(rep.min_margin, margins[i]);
    }
    return rep;
}

std::vector<MonotonicityReport> certify_corollary1(std::span<const double> lambdas,
                                                   std::int64_t m_max,
                                                   std::int64_t n_max,
                                                   unsigned threads) {
    struct Job {
        double lambda;
        std::int64_t m;
    };
    std::vector<Job> jobs;
    for (double lambda : lambdas)
        for (std::int64_t m = 1; m <= m_max; ++m) {
            double md = static_cast<double>(m);
            if (md >= 1.0 + lambda || md <= lambda) jobs.push_back({lambda, m});
        }

    std::vector<MonotonicityReport> parts(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t i) {
        parts[i] = certify_sequence(
            corollary1_sequence(jobs[i].lambda, jobs[i].m, n_max));
    });

    MonotonicityReport inc, dec;
    inc.claim = MonotonicityClaim::c1i;
    dec.claim = MonotonicityClaim::c1ii;
    for (std::size_t i = 0; i < jobs.size(); ++i)
        merge_into(parts[i].claim == MonotonicityClaim::c1i ? inc : dec, parts[i]);
    return {inc, dec};
}

MonotonicityReport certify_corollary2(std::span<const double> lambdas,
                                      std::int64_t m_max, std::int64_t n_max,
                                      unsigned threads) {
    struct Job {
        double lambda;
        std::int64_t m1;
        std::int64_t m2;
    };
    std::vector<Job> jobs;
    for (double lambda : lambdas) {
        std::int64_t m1_hi = static_cast<std::int64_t>(std::floor(lambda));
        std::int64_t m2_lo = static_cast<std::int64_t>(std::ceil(lambda));
        for (std::int64_t m1 = 1; m1 <= m1_hi; ++m1)
            for (std::int64_t m2 = std::max(m1, m2_lo); m2 <= m_max; ++m2)
                jobs.push_back({lambda, m1, m2});
    }
    std::vector<MonotonicityReport> parts(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t i) {
        parts[i] = certify_sequence(
            corollary2_sequence(jobs[i].lambda, jobs[i].m1, jobs[i].m2, n_max));
    });
    MonotonicityReport rep;
    rep.claim = MonotonicityClaim::c2;
    for (const auto& part : parts) merge_into(rep, part);
    return rep;
}

std::vector<MonotonicityReport> certify_theorem2(std::span<const double> lambdas,
                                                 std::int64_t m_max,
                                                 std::int64_t n_max,
                                                 unsigned threads) {
    struct Job {
        double lambda;
        std::int64_t m;
    };
    std::vector<Job> jobs;
    for (double lambda : lambdas)
        for (std::int64_t m = 1; m <= m_max; ++m) jobs.push_back({lambda, m});

    std::vector<MonotonicityReport> step_parts(jobs.size());
    std::vector<MonotonicityReport> side_parts(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t i) {
        TailSequence seq = theorem2_sequence(jobs[i].lambda, jobs[i].m, n_max);
        step_parts[i].claim = MonotonicityClaim::t2;
        step_parts[i].grid_size = seq.terms.size();
        check_steps(seq, step_parts[i]);
        side_parts[i].claim = MonotonicityClaim::c3;
        check_side(seq, side_parts[i]);
        side_parts[i].grid_size =
            seq.direction == SequenceDirection::constant ? 0 : seq.terms.size();
    });

    MonotonicityReport t2, c3;
    t2.claim = MonotonicityClaim::t2;
    c3.claim = MonotonicityClaim::c3;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        merge_into(t2, step_parts[i]);
        merge_into(c3, side_parts[i]);
    }
    return {t2, c3};
}

MonotonicityReport certify_mlr(std::span<const MlrCase> cases,
                               std::int64_t matrix_n_max, std::int64_t n_cap,
                               unsigned threads) {
    MonotonicityReport rep;
    rep.claim = MonotonicityClaim::mlr;

    // Sign agreement between delta and tilde-delta across the matrix sweep.
    std::vector<std::vector<std::string>> row_failures(
        static_cast<std::size_t>(matrix_n_max));
    std::vector<std::size_t> row_cells(static_cast<std::size_t>(matrix_n_max), 0);
    parallel_for(static_cast<std::size_t>(matrix_n_max), threads, [&](std::size_t i) {
        std::int64_t n = static_cast<std::int64_t>(i) + 1;
        double nn = static_cast<double>(n);
        const double lambdas[] = {0.5, 1.0, 2.0, nn / 2.0, nn};
        for (double lambda : lambdas) {
            for (const MlrCell& cell : mlr_matrix(n, lambda)) {
                ++row_cells[i];
                if (std::fabs(cell.tilde_delta_nk) <= kSignAgreeFloor) continue;
                bool agree = (cell.delta_nk > 0.0) == (cell.tilde_delta_nk > 0.0) &&
                             cell.delta_nk != 0.0;
                if (!agree)
                    row_failures[i].push_back(strf(
                        "sign mismatch at n=%lld k=%lld lambda=%.17g: delta=%.3e "
                        "tilde=%.3e",
                        static_cast<long long>(cell.n),
                        static_cast<long long>(cell.k), lambda, cell.delta_nk,
                        cell.tilde_delta_nk));
            }
        }
    });
    for (std::size_t i = 0; i < row_failures.size(); ++i) {
        rep.grid_size += row_cells[i];
        for (auto& v : row_failures[i]) rep.violations.push_back(std::move(v));
    }

    // A concrete violation must exist for every requested (c, a) case.
    for (const MlrCase& mc : cases) {
        ++rep.grid_size;
        auto hit = find_mlr_violation(mc.c, mc.a, 2, n_cap);
        if (!hit) {
            rep.violations.push_back(
                strf("no delta < -1e-12 found for c=%.17g a=%.17g up to n=%lld",
                     mc.c, mc.a, static_cast<long long>(n_cap)));
        } else {
            rep.min_margin = std::min(rep.min_margin, -hit->delta);
        }
    }
    return rep;
}

}  // namespace poisson_approx
