#include "support/bessel_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "support/gauss_legendre.hpp"

namespace testsupport {

namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;

// Panel count scaled with the oscillation budget m*pi + 2x.
std::size_t panels_for(int m, double x) {
    const double cycles = (std::abs(m) * 3.15 + 2.0 * x) / (2.0 * kPiL);
    return 8 + 2 * static_cast<std::size_t>(std::ceil(cycles));
}

}  // namespace

double oracle_j(int m, double x) {
    if (x < 0.0) throw std::invalid_argument("oracle_j: x must be >= 0");
    if (m < 0) {
        const double v = oracle_j(-m, x);
        return (-m) % 2 == 1 ? -v : v;
    }
    const long double xl = x;
    const long double ml = m;
    const long double integral = integrate(
        [&](long double t) { return std::cos(ml * t - xl * std::sin(t)); }, 0.0L, kPiL,
        panels_for(m, x), 32);
    return static_cast<double>(integral / kPiL);
}

double oracle_y(int m, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("oracle_y: x must be > 0");
    if (m < 0) {
        const double v = oracle_y(-m, x);
        return (-m) % 2 == 1 ? -v : v;
    }
    const long double xl = x;
    const long double ml = m;

    const long double oscillatory = integrate(
        [&](long double t) { return std::sin(xl * std::sin(t) - ml * t); }, 0.0L, kPiL,
        panels_for(m, x), 32);

    // Decaying part: integrand exp(mt - x sinh t) + (-1)^m exp(-mt - x sinh t).
    // Find where the dominant exponent falls 140 below its maximum.
    const long double tpeak = (ml > xl) ? std::acosh(ml / xl) : 0.0L;
    const long double fmax = ml * tpeak - xl * std::sinh(tpeak);
    long double tend = tpeak + 1.0L;
    while (ml * tend - xl * std::sinh(tend) > fmax - 140.0L) tend += 0.5L;

    const long double sign = (m % 2 == 0) ? 1.0L : -1.0L;
    const long double decaying = integrate(
        [&](long double t) {
            const long double damp = std::exp(-xl * std::sinh(t));
            return (std::exp(ml * t) + sign * std::exp(-ml * t)) * damp;
        },
        0.0L, tend, 220, 32);

    return static_cast<double>((oscillatory - decaying) / kPiL);
}

}  // namespace testsupport
