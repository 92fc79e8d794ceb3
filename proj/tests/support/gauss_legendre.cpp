#include "support/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace testsupport {

namespace {

GaussRule compute_rule(std::size_t n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const long double pi = 3.14159265358979323846264338327950288L;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-angle initial guess, then Newton on P_n.
        long double x = std::cos(pi * (static_cast<long double>(i) + 0.75L) /
                                 (static_cast<long double>(n) + 0.5L));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const long double pk = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) /
                                       static_cast<long double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<long double>(n) * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-21L) break;
        }
        // One recomputation of p0/p1 for the weight at the converged node.
        long double p0 = 1.0L, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const long double pk =
                ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / static_cast<long double>(k);
            p0 = p1;
            p1 = pk;
        }
        dp = static_cast<long double>(n) * (x * p1 - p0) / (x * x - 1.0L);
        const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_rule(std::size_t n) {
    static std::map<std::size_t, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

}  // namespace testsupport
