#include "poisson_approx/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "poisson_approx/distances.hpp"
#include "poisson_approx/lambda_opt.hpp"

namespace poisson_approx {

namespace {

void require_n(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("bounds: n must be >= 1");
}

void require_open_p(double p, const char* who) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument(std::string(who) + ": p must be in (0, 1)");
}

BoundReport upper_report(BoundName name, double bound, double exact) {
    return BoundReport{name, bound, exact, bound - exact};
}

BoundReport lower_report(BoundName name, double bound, double exact) {
    return BoundReport{name, bound, exact, exact - bound};
}

}  // namespace

std::string to_string(BoundName name) {
    switch (name) {
        case BoundName::magic: return "magic";
        case BoundName::magic_np2: return "magic_np2";
        case BoundName::triangle: return "triangle";
        case BoundName::serfling: return "serfling";
        case BoundName::corollary: return "corollary";
        case BoundName::borisov_lower: return "borisov_lower";
        case BoundName::borisov_upper: return "borisov_upper";
    }
    return "unknown";
}

double magic_bound(std::int64_t n, double p) {
    require_n(n);
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("magic_bound: p must be in [0, 1)");
    return -std::expm1(-static_cast<double>(n) * p) * p;
}

double magic_np2_cap(std::int64_t n, double p) {
    require_n(n);
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("magic_np2_cap: p must be in [0, 1)");
    return static_cast<double>(n) * p * p;
}

double triangle_bound(std::int64_t n, double p, double lambda) {
    require_n(n);
    require_open_p(p, "triangle_bound");
    if (!(lambda > 0.0))
        throw std::invalid_argument("triangle_bound: lambda must be positive");
    if (lambda >= static_cast<double>(n))
        throw std::invalid_argument(
            "triangle_bound: lambda must be below n (the intermediate "
            "Binomial(n, lambda/n) does not exist otherwise)");
    double nn = static_cast<double>(n);
    return std::fabs(nn * p - lambda) - std::expm1(-lambda) * lambda / nn;
}

double serfling_bound(std::int64_t n, double p) {
    require_n(n);
    require_open_p(p, "serfling_bound");
    return static_cast<double>(n) * delta_p(p);
}

double corollary_bound(std::int64_t n, double p) {
    require_n(n);
    require_open_p(p, "corollary_bound");
    return static_cast<double>(n) * min_tv_value(p);
}

ProbabilityEnvelope borisov_envelope(std::int64_t n, double p,
                                     double event_prob_poisson) {
    require_n(n);
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("borisov_envelope: p must be in [0, 1)");
    if (!(event_prob_poisson >= 0.0 && event_prob_poisson <= 1.0))
        throw std::invalid_argument("borisov_envelope: event probability outside [0, 1]");
    double q = event_prob_poisson;
    ProbabilityEnvelope env;
    env.lower = std::max(0.0, (q - p) / (1.0 - p));
    env.upper = std::min(1.0, q / (1.0 - p));
    return env;
}

std::vector<BoundReport> bound_table(std::int64_t n, double p,
                                     std::optional<double> lambda,
                                     std::optional<std::int64_t> m) {
    require_n(n);
    require_open_p(p, "bound_table");
    std::vector<BoundReport> table;
    double nn = static_cast<double>(n);

    double tv_at_np = tv_binom_poisson({n, p}, {nn * p});
    table.push_back(upper_report(BoundName::magic, magic_bound(n, p), tv_at_np));
    table.push_back(upper_report(BoundName::magic_np2, magic_np2_cap(n, p), tv_at_np));

    double tv_at_circ = tv_binom_poisson({n, p}, {nn * lambda_circ(p)});
    table.push_back(upper_report(BoundName::serfling, serfling_bound(n, p), tv_at_circ));

    double tv_at_star = tv_binom_poisson({n, p}, {nn * lambda_star(p)});
    table.push_back(upper_report(BoundName::corollary, corollary_bound(n, p), tv_at_star));

    if (lambda) {
        double tv_at_l = tv_binom_poisson({n, p}, {*lambda});
        table.push_back(upper_report(BoundName::triangle,
                                     triangle_bound(n, p, *lambda), tv_at_l));
    }
    if (m) {
        double q = poisson_sf({nn * p}, *m);
        double exact = binom_sf({n, p}, *m);
        ProbabilityEnvelope env = borisov_envelope(n, p, q);
        table.push_back(lower_report(BoundName::borisov_lower, env.lower, exact));
        table.push_back(upper_report(BoundName::borisov_upper, env.upper, exact));
    }
    return table;
}

}  // namespace poisson_approx
