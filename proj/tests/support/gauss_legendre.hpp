#pragma once

#include <cstddef>
#include <vector>

namespace testsupport {

/// Gauss-Legendre nodes/weights on [-1, 1], computed in long double by
/// Newton iteration on the Legendre recurrence.
struct GaussRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

const GaussRule& gauss_rule(std::size_t n);

/// Composite Gauss-Legendre integral of f over [a, b] with `panels`
/// equal panels of an n-point rule.
template <typename F>
long double integrate(F&& f, long double a, long double b, std::size_t panels, std::size_t n) {
    const GaussRule& rule = gauss_rule(n);
    const long double h = (b - a) / static_cast<long double>(panels);
    long double total = 0.0L;
    for (std::size_t p = 0; p < panels; ++p) {
        const long double lo = a + h * static_cast<long double>(p);
        const long double mid = lo + 0.5L * h;
        long double acc = 0.0L;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            acc += rule.weights[i] * f(mid + 0.5L * h * rule.nodes[i]);
        }
        total += acc * 0.5L * h;
    }
    return total;
}

}  // namespace testsupport
