#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "symbreak/grading.hpp"
#include "symbreak/matrix.hpp"

namespace symbreak {

/// M(S,T) = ||S - T S T^{-1}||_F^2 / (4 ||S||_F^2), with T^{-1} = T'.
/// Requires unitary t (unitarity_residual <= unitarity_tol) and nonzero s.
double measure_direct(const ComplexMatrix& s, const ComplexMatrix& t,
                      double unitarity_tol = 1e-10);

/// Diagonal transform exp(-i theta Gamma) for a continuous grading.
ComplexMatrix build_continuous_transform(const SymmetryGrading& grading, double theta);

/// Closed form of the continuous measure from the coupling table:
/// M(theta) = sum sin^2((gbar - g) theta / 2) X / total.
double measure_continuous_closed(const CouplingTable& x, double theta);

struct SeriesEval {
    double value = 0.0;
    double imag_residue = 0.0;     // |Im| of the complex accumulation
    double remainder_bound = 0.0;  // tail bound past max_total_order
    int order = 0;
};

/// Literal power-series evaluation of the continuous measure: quadruple sum
/// over (p, q, n, m) with p+q+n+m <= max_total_order, excluding
/// (p,q) = (0,0) and (n,m) = (0,0), keeping terms with both p-q+m-n and
/// p+q+n+m even. Kept as an independent cross-check of the closed form.
/// Throws numeric_error when the documented remainder bound exceeds
/// convergence_tol (non-convergent parameter regime at this order).
SeriesEval measure_continuous_series_eval(const CouplingTable& x, double theta,
                                          int max_total_order, double convergence_tol = 1e-12);
double measure_continuous_series(const CouplingTable& x, double theta, int max_total_order);

/// Discrete measure: M = sum [1 - Re(g conj(gbar))] X / (2 total);
/// requires unit-modulus eigenvalues.
double measure_discrete(const CouplingTable& x);

/// Local slope B: coefficient of theta^2 in M(theta) as theta -> 0.
double local_slope(const CouplingTable& x);

struct SymmetricLimitReport {
    bool applicable = false;  // B is zero at the stated threshold
    bool pass = false;
    double b_gamma = 0.0;
    double max_m = 0.0;
    double worst_theta = 0.0;
};

/// When B = 0 the measure must vanish identically; scans the theta grid.
SymmetricLimitReport check_b0_implies_m0(const CouplingTable& x,
                                         std::span<const double> theta_grid);

/// C = sqrt(sum (g - gbar)^2 X): bound on the exchange of the conserved
/// quantity with any normalized input, for unitary interactions.
double exchange_ability(const CouplingTable& x);

/// Uniform theta grid [theta_min, theta_max] of the closed-form measure.
std::vector<std::pair<double, double>> sweep_measure(const CouplingTable& x, double theta_min,
                                                     double theta_max, std::size_t samples);
std::vector<std::pair<double, double>> sweep_measure_serial(const CouplingTable& x,
                                                            double theta_min, double theta_max,
                                                            std::size_t samples);

struct MeasureDiagnostics {
    int truncation_order = 0;          // max |gamma| when integer-like, else 0
    double unitarity_residual = -1.0;  // of the operator, when square; -1 otherwise
    double condition_estimate = -1.0;
    int series_order = 0;
    double convergence_delta = -1.0;
};

/// Everything the CLI reports for one operator + symmetry.
struct MeasureReport {
    std::vector<std::pair<double, double>> theta_samples;
    double b_gamma = 0.0;
    double c_s_gamma = 0.0;
    double total_coupling = 0.0;
    MeasureDiagnostics diagnostics;

    /// Range/consistency checks; throws numeric_error on violation.
    void validate() const;
};

}  // namespace symbreak
