#include "symbreak/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace symbreak {

namespace {

constexpr int kMaxOrder = 200;
constexpr double kMaxArg = 1e4;
constexpr long double kPiL = 3.14159265358979323846264338327950288L;
constexpr long double kEulerGammaL = 0.57721566490153286060651209008240243L;

void check_domain(int m, double x, bool y_kind) {
    if (std::abs(m) > kMaxOrder) {
        throw std::domain_error("bessel: order " + std::to_string(m) + " out of range (|m| <= " +
                                std::to_string(kMaxOrder) + ")");
    }
    if (!std::isfinite(x) || x > kMaxArg || x < 0.0 || (y_kind && x == 0.0)) {
        throw std::domain_error("bessel: argument " + std::to_string(x) + " out of range");
    }
}

// Start order for the downward recurrence: comfortably past the turning
// point at max(m, x), with padding that covers the Airy transition region.
int miller_start(int mmax, double x) {
    const double xm = std::max(static_cast<double>(mmax), x);
    const int pad = 26 + static_cast<int>(std::ceil(13.0 * std::cbrt(0.5 * std::max(x, 1.0))));
    return static_cast<int>(std::ceil(xm)) + pad;
}

// Y0 and Y1 by ascending power series; cancellation limits this to
// moderate x, so evaluate in long double and cross to the large-argument
// expansion at x = 16.
void y01_series(double xd, double& y0_out, double& y1_out) {
    const long double x = xd;
    const long double half_x = 0.5L * x;
    const long double q = half_x * half_x;  // x^2/4
    const long double lg = std::log(half_x) + kEulerGammaL;

    // J0, J1 ascending series alongside.
    long double j0 = 1.0L, j0_term = 1.0L;
    long double j1 = half_x, j1_term = half_x;
    // sum0 = sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2
    // sum1 = sum_{k>=0} (-1)^k (H_k + H_{k+1}) (x/2)^{2k+1} / (k! (k+1)!)
    long double sum0 = 0.0L;
    long double h = 0.0L;  // H_k
    long double term0 = 1.0L;
    long double sum1 = half_x;  // k = 0 term: (H_0 + H_1) = 1 times x/2
    long double term1 = half_x;
    for (int k = 1; k <= 220; ++k) {
        const long double kk = static_cast<long double>(k);
        term0 *= q / (kk * kk);
        h += 1.0L / kk;
        sum0 += (k % 2 == 1 ? 1.0L : -1.0L) * h * term0;

        j0_term *= -q / (kk * kk);
        j0 += j0_term;
        j1_term *= -q / (kk * (kk + 1.0L));
        j1 += j1_term;

        term1 *= q / (kk * (kk + 1.0L));
        const long double hsum = 2.0L * h + 1.0L / (kk + 1.0L);  // H_k + H_{k+1}
        sum1 += (k % 2 == 0 ? 1.0L : -1.0L) * hsum * term1;

        if (term0 < 1e-40L && term1 < 1e-40L && std::abs(j0_term) < 1e-40L) break;
    }
    const long double two_over_pi = 2.0L / kPiL;
    const long double y0 = two_over_pi * (lg * j0 + sum0);
    const long double y1 = two_over_pi * (lg * j1 - 1.0L / x) - sum1 / kPiL;
    y0_out = static_cast<double>(y0);
    y1_out = static_cast<double>(y1);
}

// Large-argument (Hankel) expansion for order 0 or 1, optimally truncated.
void jy_asymptotic(int nu, double xd, double& j_out, double& y_out) {
    const long double x = xd;
    const long double mu = 4.0L * nu * nu;
    long double a = 1.0L;  // a_k
    long double p = 1.0L, q = 0.0L;
    long double prev = std::abs(a);
    for (int k = 1; k <= 80; ++k) {
        const long double num = mu - static_cast<long double>(2 * k - 1) *
                                         static_cast<long double>(2 * k - 1);
        a *= num / (static_cast<long double>(k) * 8.0L * x);
        if (std::abs(a) >= prev) break;  // divergence point: stop at smallest term
        prev = std::abs(a);
        const int phase = k % 4;
        if (phase == 1) q += a;
        else if (phase == 2) p -= a;
        else if (phase == 3) q -= a;
        else p += a;
        if (std::abs(a) < 1e-25L) break;
    }
    const long double chi = x - (0.5L * nu + 0.25L) * kPiL;
    const long double amp = std::sqrt(2.0L / (kPiL * x));
    const long double c = std::cos(chi), s = std::sin(chi);
    j_out = static_cast<double>(amp * (p * c - q * s));
    y_out = static_cast<double>(amp * (p * s + q * c));
}

void y01(double x, double& y0, double& y1) {
    if (x < 16.0) {
        y01_series(x, y0, y1);
    } else {
        double j_unused;
        jy_asymptotic(0, x, j_unused, y0);
        jy_asymptotic(1, x, j_unused, y1);
    }
}

}  // namespace

std::vector<double> bessel_j_array(int mmax, double x) {
    if (mmax < 0) throw std::domain_error("bessel_j_array: negative max order");
    check_domain(mmax, x, false);
    std::vector<double> j(mmax + 1, 0.0);
    if (x == 0.0) {
        j[0] = 1.0;
        return j;
    }

    const int start = miller_start(mmax, x);
    constexpr double kRescale = 1e250;
    double fp = 0.0;        // J~_{mm+1}
    double f = 1e-30;       // J~_{mm}
    double norm = 0.0;      // J0 + 2 sum J_{2k}, accumulated on the fly
    if (start % 2 == 0) norm += 2.0 * f;
    for (int mm = start; mm >= 1; --mm) {
        double fm1 = (2.0 * mm / x) * f - fp;
        fp = f;
        f = fm1;
        const int order = mm - 1;
        if (order <= mmax) j[order] = f;
        if (order == 0) norm += f;
        else if (order % 2 == 0) norm += 2.0 * f;
        if (std::abs(f) > kRescale) {
            f /= kRescale;
            fp /= kRescale;
            norm /= kRescale;
            for (int i = order; i <= mmax; ++i) j[i] /= kRescale;
        }
    }
    for (double& v : j) v /= norm;
    return j;
}

std::vector<double> bessel_y_array(int mmax, double x) {
    if (mmax < 0) throw std::domain_error("bessel_y_array: negative max order");
    check_domain(mmax, x, true);
    std::vector<double> y(mmax + 1, 0.0);
    double y0, y1;
    y01(x, y0, y1);
    y[0] = y0;
    if (mmax >= 1) y[1] = y1;
    if (mmax >= 2) {
        long double prev = y0, cur = y1;
        for (int m = 1; m < mmax; ++m) {
            long double next = (2.0L * m / static_cast<long double>(x)) * cur - prev;
            prev = cur;
            cur = next;
            y[m + 1] = static_cast<double>(next);
            if (std::isinf(y[m + 1])) {
                for (int r = m + 2; r <= mmax; ++r) {
                    y[r] = y[m + 1];  // overflowed: everything beyond saturates
                }
                break;
            }
        }
    }
    return y;
}

double bessel_j(int m, double x) {
    check_domain(m, x, false);
    const int am = std::abs(m);
    const double v = bessel_j_array(am, x)[am];
    return (m < 0 && am % 2 == 1) ? -v : v;
}

double bessel_y(int m, double x) {
    check_domain(m, x, true);
    const int am = std::abs(m);
    const double v = bessel_y_array(am, x)[am];
    return (m < 0 && am % 2 == 1) ? -v : v;
}

std::complex<double> hankel1(int m, double x) {
    return {bessel_j(m, x), bessel_y(m, x)};
}

}  // namespace symbreak
