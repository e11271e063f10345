#include "poisson_approx/lambda_opt.hpp"

#include <cmath>
#include <stdexcept>

#include "poisson_approx/distances.hpp"

namespace poisson_approx {

namespace {

constexpr double kExpMinus1 = 0.36787944117144233;       // e^-1
constexpr double kOneMinusExpMinus1 = 0.6321205588285577;  // 1 - e^-1
constexpr double kBisectTol = 1e-13;
constexpr double kFlatTol = 1e-12;  // profile difference flatness tolerance

void require_open_unit(double p, const char* who) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument(std::string(who) + ": p must be in (0, 1)");
}

// Root of f(l) = l e^-l - p on a bracket where f changes sign.
double bisect_rate(double p, double lo, double hi) {
    auto f = [p](double l) { return l * std::exp(-l) - p; };
    double flo = f(lo);
    while (hi - lo > kBisectTol) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm <= 0.0) == (flo <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double lambda_circ(double p) {
    require_open_unit(p, "lambda_circ");
    return -std::log1p(-p);
}

double lambda_star(double p) {
    return std::min(lambda_circ(p), 1.0);
}

double delta_p(double p) {
    require_open_unit(p, "delta_p");
    return p + (1.0 - p) * std::log1p(-p);
}

double min_tv_value(double p) {
    require_open_unit(p, "min_tv_value");
    if (p <= kOneMinusExpMinus1) return delta_p(p);
    return p - kExpMinus1;
}

LambdaBreakpoints breakpoints(double p) {
    require_open_unit(p, "breakpoints");
    LambdaBreakpoints bp;
    bp.lambda1 = lambda_circ(p);
    if (p > kExpMinus1) return bp;
    if (p == kExpMinus1) {
        // Double root: the maximum of l e^-l is attained at l = 1 exactly.
        bp.lambda2 = 1.0;
        bp.lambda3 = 1.0;
        return bp;
    }
    // l e^-l rises from 0 to e^-1 on (0, 1], falls back to 0 on [1, inf);
    // the upper bracket 3 - 2 ln p keeps l e^-l below p (checked).
    double hi3 = 3.0 - 2.0 * std::log(p);
    if (hi3 * std::exp(-hi3) >= p)
        throw std::logic_error("breakpoints: upper bracket failed");
    bp.lambda2 = std::min(bisect_rate(p, 0.0, 1.0), 1.0);
    bp.lambda3 = std::max(bisect_rate(p, 1.0, hi3), 1.0);
    return bp;
}

std::vector<double> tv_profile(double p, std::span<const double> lambdas) {
    require_open_unit(p, "tv_profile");
    if (lambdas.empty())
        throw std::invalid_argument("tv_profile: empty lambda grid");
    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i)
        if (!(lambdas[i] < lambdas[i + 1]))
            throw std::invalid_argument("tv_profile: grid must be strictly ascending");
    if (!(lambdas.front() > 0.0))
        throw std::invalid_argument("tv_profile: rates must be positive");
    std::vector<double> out;
    out.reserve(lambdas.size());
    for (double l : lambdas) out.push_back(bernoulli_poisson_tv_closed(p, l));
    return out;
}

ProfileCertification certify_tv_profile(double p, std::span<const double> lambdas) {
    std::vector<double> profile = tv_profile(p, lambdas);
    ProfileCertification cert;
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < profile.size(); ++i)
        if (profile[i] < profile[argmin]) argmin = i;
    cert.argmin_index = argmin;

    // Pattern over successive differences: negatives, then at most a flat
    // window, then positives.
    bool seen_flat = false;
    bool seen_pos = false;
    for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
        double diff = profile[i + 1] - profile[i];
        if (diff < -kFlatTol) {
            if (seen_flat || seen_pos) cert.violation_indices.push_back(i);
        } else if (diff > kFlatTol) {
            seen_pos = true;
        } else {
            if (seen_pos) cert.violation_indices.push_back(i);
            seen_flat = true;
        }
    }
    cert.unimodal = cert.violation_indices.empty();
    return cert;
}

}  // namespace poisson_approx
