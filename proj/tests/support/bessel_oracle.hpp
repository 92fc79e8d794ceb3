#pragma once

namespace testsupport {

/// Slow, independent Bessel oracles from the integral representations
///   J_m(x) = (1/pi) int_0^pi cos(m t - x sin t) dt
///   Y_m(x) = (1/pi) int_0^pi sin(x sin t - m t) dt
///            - (1/pi) int_0^inf [e^{mt} + (-1)^m e^{-mt}] e^{-x sinh t} dt
/// evaluated by composite Gauss-Legendre quadrature in long double. No
/// recurrences, no shared code with the production implementation.
double oracle_j(int m, double x);
double oracle_y(int m, double x);

}  // namespace testsupport
