#include "poisson_approx/discrete_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace poisson_approx {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogTwoPi = 1.8378770664093454836;  // log(2 pi)
constexpr double kMassTolerance = 1e-12;
constexpr double kTailTruncation = 1e-18;  // term / partial-sum cutoff

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

}  // namespace

namespace detail {

// stirlerr(n) = log(n!) - log(sqrt(2 pi n) (n/e)^n). Exact table below 16,
// truncated Stirling series above (error well under 1e-16 there).
double stirlerr(double n) {
    static const double table[16] = {
        0.0,  // unused (n = 0)
        0.08106146679532725822,
        0.041340695955409294094,
        0.027677925684998339149,
        0.020790672103765093112,
        0.016644691189821192163,
        0.013876128823070747999,
        0.011896709945891770095,
        0.010411265261972096497,
        0.0092554621827127329177,
        0.0083305634333628712565,
        0.007573675487951840795,
        0.0069428401072095298657,
        0.0064089941880042070684,
        0.0059513701127588477356,
        0.005554733551962801371,
    };
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;

    if (n < 16.0) return table[static_cast<int>(n)];
    double inv = 1.0 / n;
    double inv2 = inv * inv;
    if (n > 500.0) return (s0 - s1 * inv2) * inv;
    if (n > 80.0) return (s0 - (s1 - s2 * inv2) * inv2) * inv;
    if (n > 35.0) return (s0 - (s1 - (s2 - s3 * inv2) * inv2) * inv2) * inv;
    return (s0 - (s1 - (s2 - (s3 - s4 * inv2) * inv2) * inv2) * inv2) * inv;
}

// Deviance term x log(x/np) + np - x; series expansion when x is close to
// np, where the direct expression cancels.
double bd0(double x, double np) {
    if (std::fabs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2.0 * x * v;
        for (int j = 1;; ++j) {
            ej *= v * v;
            double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
    }
    return x * std::log(x / np) + np - x;
}

// log C(n, k) with the n log n - k log k - (n-k) log(n-k) part combined into
// same-sign ratio terms, so nothing large cancels.
double log_choose(double n, double k) {
    if (k <= 0.0 || k >= n) return 0.0;
    double nk = n - k;
    return k * std::log(n / k) + nk * std::log(n / nk) +
           0.5 * (std::log(n / (k * nk)) - kLogTwoPi) + stirlerr(n) -
           stirlerr(k) - stirlerr(nk);
}

double log_beta(double a, double b) {
    bool integral = a == std::floor(a) && b == std::floor(b) && a + b < 9e15;
    if (integral) {
        // B(a, b) = (a + b) / (a b C(a+b, a)) for positive integers.
        if (a == 1.0) return -std::log(b);
        if (b == 1.0) return -std::log(a);
        return std::log(a + b) - std::log(a) - std::log(b) -
               log_choose(a + b, a);
    }
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace detail

void validate(const BinomialParams& b) {
    if (b.n < 1) fail("BinomialParams: n must be >= 1");
    if (!(b.p >= 0.0 && b.p <= 1.0)) fail("BinomialParams: p must be in [0, 1]");
}

void validate(const PoissonParams& q) {
    if (!(q.lambda > 0.0) || !std::isfinite(q.lambda))
        fail("PoissonParams: lambda must be positive and finite");
}

void validate(const FinitePmf& f) {
    if (f.probs.empty()) fail("FinitePmf: empty support");
    detail::KahanSum total;
    for (double v : f.probs) {
        if (!(v >= 0.0)) fail("FinitePmf: negative or NaN entry");
        total.add(v);
    }
    if (std::fabs(total.value() - 1.0) > kMassTolerance)
        fail("FinitePmf: total mass differs from 1 by more than 1e-12");
}

FinitePmf FinitePmf::point_mass(std::size_t at, std::size_t length) {
    FinitePmf f;
    f.probs.assign(std::max(length, at + 1), 0.0);
    f.probs[at] = 1.0;
    return f;
}

FinitePmf FinitePmf::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) fail("bernoulli: p must be in [0, 1]");
    return FinitePmf{{1.0 - p, p}};
}

FinitePmf FinitePmf::binomial(const BinomialParams& b) {
    validate(b);
    FinitePmf f;
    f.probs.resize(static_cast<std::size_t>(b.n) + 1);
    for (std::int64_t k = 0; k <= b.n; ++k)
        f.probs[static_cast<std::size_t>(k)] = binom_pmf(b, k);
    return f;
}

Convolution convolve(const FinitePmf& f, const FinitePmf& g) {
    validate(f);
    validate(g);
    Convolution out;
    out.pmf.probs.assign(f.size() + g.size() - 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.probs[i] == 0.0) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            out.pmf.probs[i + j] += f.probs[i] * g.probs[j];
    }
    detail::KahanSum total;
    for (double v : out.pmf.probs) total.add(v);
    double drift = total.value() - 1.0;
    if (std::fabs(drift) > kMassTolerance) {
        double scale = 1.0 / total.value();
        for (double& v : out.pmf.probs) v *= scale;
        out.renormalized = true;
    }
    return out;
}

// Saddle-point form: the log pmf is assembled from stirlerr and bd0 pieces
// that are all small or moderate, keeping the exponentiated value accurate
// to a few ulp for any n.
double binom_log_pmf(const BinomialParams& b, std::int64_t k) {
    validate(b);
    if (k < 0 || k > b.n) return kNegInf;
    double n = static_cast<double>(b.n);
    double p = b.p;
    if (p == 0.0) return k == 0 ? 0.0 : kNegInf;
    if (p == 1.0) return k == b.n ? 0.0 : kNegInf;
    if (k == 0) return n * std::log1p(-p);
    if (k == b.n) return n * std::log(p);
    double x = static_cast<double>(k);
    double nx = n - x;
    return detail::stirlerr(n) - detail::stirlerr(x) - detail::stirlerr(nx) -
           detail::bd0(x, n * p) - detail::bd0(nx, n * (1.0 - p)) +
           0.5 * (std::log(n / (x * nx)) - kLogTwoPi);
}

double poisson_log_pmf(const PoissonParams& q, std::int64_t k) {
    validate(q);
    if (k < 0) return kNegInf;
    if (k == 0) return -q.lambda;
    double x = static_cast<double>(k);
    return -detail::stirlerr(x) - detail::bd0(x, q.lambda) -
           0.5 * (std::log(x) + kLogTwoPi);
}

double binom_pmf(const BinomialParams& b, std::int64_t k) {
    return std::exp(binom_log_pmf(b, k));
}

double poisson_pmf(const PoissonParams& q, std::int64_t k) {
    return std::exp(poisson_log_pmf(q, k));
}

namespace {

// Lower binomial sum P(X <= kmax), terms ascending from k = 0. Used only
// when kmax is at or below the mean, where terms increase toward the mode,
// so this accumulates smallest terms first.
double binom_lower_sum(const BinomialParams& b, std::int64_t kmax) {
    double sum = 0.0;
    for (std::int64_t k = 0; k <= kmax; ++k) sum += binom_pmf(b, k);
    return sum;
}

// Upper binomial sum P(X >= m) for m above the mean: terms decrease in k, so
// they are buffered forward and added back smallest-first. The scan stops
// once a term falls below the truncation threshold of the running total.
double binom_upper_sum(const BinomialParams& b, std::int64_t m) {
    std::vector<double> terms;
    double forward = 0.0;
    for (std::int64_t k = m; k <= b.n; ++k) {
        double t = binom_pmf(b, k);
        terms.push_back(t);
        forward += t;
        if (t < kTailTruncation * forward) break;
    }
    double sum = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
    return sum;
}

double pois_lower_sum(double lambda, std::int64_t kmax) {
    PoissonParams q{lambda};
    double sum = 0.0;
    for (std::int64_t k = 0; k <= kmax; ++k) sum += poisson_pmf(q, k);
    return sum;
}

double pois_upper_sum(double lambda, std::int64_t m) {
    PoissonParams q{lambda};
    std::vector<double> terms;
    double forward = 0.0;
    double t = poisson_pmf(q, m);
    for (std::int64_t k = m;; ++k) {
        terms.push_back(t);
        forward += t;
        if (k > lambda && t < kTailTruncation * forward) break;
        t *= lambda / static_cast<double>(k + 1);
    }
    double sum = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
    return sum;
}

}  // namespace

double binom_sf(const BinomialParams& b, std::int64_t m) {
    validate(b);
    if (m <= 0) return 1.0;
    if (m > b.n) return 0.0;
    double mean = static_cast<double>(b.n) * b.p;
    if (static_cast<double>(m) > mean) return binom_upper_sum(b, m);
    // Lower tail is the smaller side; its partial sum stays below ~0.5, so
    // the final subtraction loses no accuracy.
    return 1.0 - binom_lower_sum(b, m - 1);
}

double binom_cdf(const BinomialParams& b, std::int64_t k) {
    validate(b);
    if (k < 0) return 0.0;
    if (k >= b.n) return 1.0;
    double mean = static_cast<double>(b.n) * b.p;
    if (static_cast<double>(k + 1) > mean) return 1.0 - binom_upper_sum(b, k + 1);
    return binom_lower_sum(b, k);
}

double poisson_sf(const PoissonParams& q, std::int64_t m) {
    validate(q);
    if (m <= 0) return 1.0;
    if (static_cast<double>(m) > q.lambda) return pois_upper_sum(q.lambda, m);
    return 1.0 - pois_lower_sum(q.lambda, m - 1);
}

double poisson_cdf(const PoissonParams& q, std::int64_t k) {
    validate(q);
    if (k < 0) return 0.0;
    if (static_cast<double>(k + 1) > q.lambda)
        return 1.0 - pois_upper_sum(q.lambda, k + 1);
    return pois_lower_sum(q.lambda, k);
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cont_frac(double a, double b, double x) {
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;
    constexpr int max_iter = 20000;

    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

double reg_inc_beta_direct(double a, double b, double x) {
    double log_front = a * std::log(x) + b * std::log1p(-x) -
                       detail::log_beta(a, b);
    return std::exp(log_front) * beta_cont_frac(a, b, x) / a;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) fail("reg_inc_beta: a and b must be positive");
    if (!(x >= 0.0 && x <= 1.0)) fail("reg_inc_beta: x must be in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (x <= a / (a + b)) return reg_inc_beta_direct(a, b, x);
    return 1.0 - reg_inc_beta_direct(b, a, 1.0 - x);
}

}  // namespace poisson_approx
