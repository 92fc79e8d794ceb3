#pragma once

#include <complex>
#include <vector>

namespace symbreak {

/// Cylindrical Bessel functions of integer order.
///
/// J: downward (Miller) recurrence with series normalization, stable for
/// all orders. Y: explicit Y0/Y1 (power series for small argument, large-
/// argument expansion beyond) followed by upward recurrence, which is the
/// dominant-solution direction and therefore stable.
///
/// Domain: |m| <= 200, 0 <= x <= 1e4 for J, 0 < x <= 1e4 for Y. Absolute
/// accuracy ~1e-13 for |m| <= 60, x <= 50 (relative where |Y| is large);
/// Y overflows to -inf for extreme (m, x) combinations outside that box.
double bessel_j(int m, double x);
double bessel_y(int m, double x);

/// J_0..J_mmax and Y_0..Y_mmax in one sweep (the Graf translation fill and
/// the disc T-matrices consume whole order ranges).
std::vector<double> bessel_j_array(int mmax, double x);
std::vector<double> bessel_y_array(int mmax, double x);

/// H^(1)_m = J_m + i Y_m.
std::complex<double> hankel1(int m, double x);

}  // namespace symbreak
