#include "poisson_approx/distances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poisson_approx {

double tv_binom_poisson(const BinomialParams& b, const PoissonParams& q) {
    validate(b);
    validate(q);
    detail::KahanSum l1;
    for (std::int64_t k = 0; k <= b.n; ++k)
        l1.add(std::fabs(binom_pmf(b, k) - poisson_pmf(q, k)));
    // All Poisson mass above n sits where the binomial has none.
    double tail = poisson_sf(q, b.n + 1);
    return 0.5 * l1.value() + 0.5 * tail;
}

double kolmogorov_binom_poisson(const BinomialParams& b,
                                const PoissonParams& q) {
    validate(b);
    validate(q);
    detail::KahanSum cdf_diff;
    double sup = 0.0;
    for (std::int64_t k = 0; k <= b.n; ++k) {
        cdf_diff.add(binom_pmf(b, k) - poisson_pmf(q, k));
        sup = std::max(sup, std::fabs(cdf_diff.value()));
    }
    // For k >= n the difference is the Poisson tail, maximal at k = n.
    sup = std::max(sup, poisson_sf(q, b.n + 1));
    return sup;
}

double tv_finite(const FinitePmf& f, const FinitePmf& g) {
    validate(f);
    validate(g);
    std::size_t len = std::max(f.size(), g.size());
    detail::KahanSum l1;
    for (std::size_t k = 0; k < len; ++k) l1.add(std::fabs(f.at(k) - g.at(k)));
    return 0.5 * l1.value();
}

double bernoulli_poisson_tv_closed(double p, double lambda) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("bernoulli_poisson_tv_closed: p must be in (0, 1)");
    if (!(lambda > 0.0))
        throw std::invalid_argument("bernoulli_poisson_tv_closed: lambda must be positive");
    double el = std::exp(-lambda);
    double lel = lambda * el;
    double rest = -std::expm1(-lambda) - lel;  // 1 - e^-l - l e^-l >= 0
    return 0.5 * (std::fabs(1.0 - p - el) + std::fabs(p - lel) + rest);
}

DistanceReport distance_report(const BinomialParams& b, const PoissonParams& q) {
    DistanceReport r;
    r.binom = b;
    r.poisson = q;
    r.tv = tv_binom_poisson(b, q);
    r.kolmogorov = kolmogorov_binom_poisson(b, q);
    return r;
}

}  // namespace poisson_approx
