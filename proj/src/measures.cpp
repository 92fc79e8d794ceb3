#include "symbreak/measures.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "symbreak/errors.hpp"

namespace symbreak {

double measure_direct(const ComplexMatrix& s, const ComplexMatrix& t, double unitarity_tol) {
    if (!s.square() || !t.square() || s.n_rows != t.n_rows) {
        throw std::invalid_argument("measure_direct requires square S and T of equal dimension");
    }
    const double resid = unitarity_residual(t);
    if (resid > unitarity_tol) {
        throw numeric_error("measure_direct: T is not unitary (residual " +
                            std::to_string(resid) + ")");
    }
    const double denom = frobenius_norm_sq(s);
    if (denom == 0.0) {
        throw numeric_error("measure_direct: zero operator, measure undefined (0/0)");
    }
    const ComplexMatrix transformed = matmul(matmul(t, s), adjoint(t));
    const double num = frobenius_norm_sq(subtract(s, transformed));
    return num / (4.0 * denom);
}

ComplexMatrix build_continuous_transform(const SymmetryGrading& grading, double theta) {
    if (grading.kind != SymmetryKind::continuous) {
        throw std::invalid_argument("build_continuous_transform requires a continuous grading");
    }
    const std::size_t n = grading.size();
    ComplexMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double g = grading.eigenvalues[i].real();
        t.at(i, i) = std::polar(1.0, -theta * g);
        t.row_labels[i].gamma = cplx{g, 0.0};
        t.col_labels[i].gamma = cplx{g, 0.0};
    }
    return t;
}

namespace {

void require_total(const CouplingTable& x) {
    if (!(x.total > 0.0)) {
        throw numeric_error("coupling table has zero total coupling; measure undefined");
    }
}

double real_gamma(const cplx& g) {
    if (std::abs(g.imag()) > 1e-12) {
        throw std::invalid_argument("continuous measure on a table with complex eigenvalues");
    }
    return g.real();
}

}  // namespace

double measure_continuous_closed(const CouplingTable& x, double theta) {
    require_total(x);
    double acc = 0.0;
    for (std::size_t o = 0; o < x.n_out(); ++o) {
        const double gbar = real_gamma(x.outgoing_gammas[o]);
        for (std::size_t i = 0; i < x.n_in(); ++i) {
            const double g = real_gamma(x.incoming_gammas[i]);
            const double s = std::sin(0.5 * (gbar - g) * theta);
            acc += s * s * x.at(o, i);
        }
    }
    return acc / x.total;
}

SeriesEval measure_continuous_series_eval(const CouplingTable& x, double theta,
                                          int max_total_order, double convergence_tol) {
    require_total(x);
    if (max_total_order < 2) throw std::invalid_argument("series order must be >= 2");

    SeriesEval ev;
    ev.order = max_total_order;

    // Tail bound: the collapsed series per (g, gbar) pair is the Taylor
    // expansion of 2 - 2cos(d theta); bound its remainder past the cutoff.
    for (std::size_t o = 0; o < x.n_out(); ++o) {
        for (std::size_t i = 0; i < x.n_in(); ++i) {
            const double d = std::abs(real_gamma(x.outgoing_gammas[o]) -
                                      real_gamma(x.incoming_gammas[i]));
            const double z = d * std::abs(theta);
            if (x.at(o, i) == 0.0 || z == 0.0) continue;
            const int k1 = max_total_order + 1;
            if (z >= static_cast<double>(k1 + 1)) {
                throw numeric_error(
                    "series does not converge at this order for |gamma difference * theta| = " +
                    std::to_string(z));
            }
            double lead = 2.0;
            for (int j = 1; j <= k1; ++j) lead *= z / static_cast<double>(j);
            const double ratio = z / static_cast<double>(k1 + 1);
            ev.remainder_bound += x.at(o, i) * lead / (1.0 - ratio);
        }
    }
    ev.remainder_bound /= 4.0 * x.total;
    if (ev.remainder_bound > convergence_tol) {
        throw numeric_error("series remainder bound " + std::to_string(ev.remainder_bound) +
                            " above tolerance at order " + std::to_string(max_total_order));
    }

    if (theta == 0.0) return ev;  // every term carries theta^k, k >= 2

    // Moments P[a][b] = sum gbar^a g^b X over all pairs.
    const int kmax = max_total_order;
    std::vector<std::vector<double>> moment(kmax + 1, std::vector<double>(kmax + 1, 0.0));
    for (std::size_t o = 0; o < x.n_out(); ++o) {
        const double gbar = real_gamma(x.outgoing_gammas[o]);
        for (std::size_t i = 0; i < x.n_in(); ++i) {
            const double g = real_gamma(x.incoming_gammas[i]);
            const double w = x.at(o, i);
            if (w == 0.0) continue;
            double pb = 1.0;
            for (int a = 0; a <= kmax; ++a) {
                double pg = 1.0;
                for (int b = 0; a + b <= kmax; ++b) {
                    moment[a][b] += w * pb * pg;
                    pg *= g;
                }
                pb *= gbar;
            }
        }
    }

    std::vector<double> inv_fact(kmax + 1);
    inv_fact[0] = 1.0;
    for (int j = 1; j <= kmax; ++j) inv_fact[j] = inv_fact[j - 1] / static_cast<double>(j);

    const cplx i_pow[4] = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};

    cplx acc{0.0, 0.0};
    double theta_k = theta * theta;
    for (int k = 2; k <= kmax; k += 2, theta_k *= theta * theta) {
        cplx order_acc{0.0, 0.0};
        for (int p = 0; p <= k; ++p) {
            for (int q = 0; p + q <= k; ++q) {
                if (p == 0 && q == 0) continue;
                for (int n = 0; p + q + n <= k; ++n) {
                    const int m = k - p - q - n;
                    if (n == 0 && m == 0) continue;
                    const int ie = p - q + m - n;
                    if (((ie % 2) + 2) % 2 != 0) continue;  // excluded parity
                    const cplx phase = i_pow[((ie % 4) + 4) % 4];
                    const double w =
                        inv_fact[p] * inv_fact[q] * inv_fact[n] * inv_fact[m] * moment[p + n][q + m];
                    order_acc += phase * w;
                }
            }
        }
        acc += order_acc * theta_k;
    }
    acc /= 4.0 * x.total;
    ev.value = acc.real();
    ev.imag_residue = std::abs(acc.imag());
    return ev;
}

double measure_continuous_series(const CouplingTable& x, double theta, int max_total_order) {
    return measure_continuous_series_eval(x, theta, max_total_order).value;
}

double measure_discrete(const CouplingTable& x) {
    require_total(x);
    for (const cplx& g : x.incoming_gammas) {
        if (std::abs(std::abs(g) - 1.0) > 1e-12) {
            throw std::invalid_argument("measure_discrete: non-unimodular eigenvalue");
        }
    }
    for (const cplx& g : x.outgoing_gammas) {
        if (std::abs(std::abs(g) - 1.0) > 1e-12) {
            throw std::invalid_argument("measure_discrete: non-unimodular eigenvalue");
        }
    }
    double acc = 0.0;
    for (std::size_t o = 0; o < x.n_out(); ++o) {
        for (std::size_t i = 0; i < x.n_in(); ++i) {
            const double re = (x.incoming_gammas[i] * std::conj(x.outgoing_gammas[o])).real();
            acc += (1.0 - re) * x.at(o, i);
        }
    }
    return acc / (2.0 * x.total);
}

double local_slope(const CouplingTable& x) {
    require_total(x);
    double acc = 0.0;
    for (std::size_t o = 0; o < x.n_out(); ++o) {
        const double gbar = real_gamma(x.outgoing_gammas[o]);
        for (std::size_t i = 0; i < x.n_in(); ++i) {
            const double g = real_gamma(x.incoming_gammas[i]);
            acc += (g - gbar) * (g - gbar) * x.at(o, i);
        }
    }
    return acc / (4.0 * x.total);
}

SymmetricLimitReport check_b0_implies_m0(const CouplingTable& x,
                                         std::span<const double> theta_grid) {
    require_total(x);
    SymmetricLimitReport rep;
    rep.b_gamma = local_slope(x);

    double dmax = 0.0;
    for (const cplx& go : x.outgoing_gammas) {
        for (const cplx& gi : x.incoming_gammas) {
            dmax = std::max(dmax, std::abs(real_gamma(go) - real_gamma(gi)));
        }
    }
    const double threshold = 1e-14 * 0.25 * dmax * dmax;
    rep.applicable = rep.b_gamma <= threshold;
    if (!rep.applicable) {
        rep.pass = true;  // vacuous: precondition B = 0 not met
        return rep;
    }
    rep.pass = true;
    for (double theta : theta_grid) {
        const double m = measure_continuous_closed(x, theta);
        if (m > rep.max_m) {
            rep.max_m = m;
            rep.worst_theta = theta;
        }
    }
    if (rep.max_m > 1e-12) rep.pass = false;
    return rep;
}

double exchange_ability(const CouplingTable& x) {
    require_total(x);
    double acc = 0.0;
    for (std::size_t o = 0; o < x.n_out(); ++o) {
        const double gbar = real_gamma(x.outgoing_gammas[o]);
        for (std::size_t i = 0; i < x.n_in(); ++i) {
            const double g = real_gamma(x.incoming_gammas[i]);
            acc += (g - gbar) * (g - gbar) * x.at(o, i);
        }
    }
    return std::sqrt(acc);
}

namespace {

std::vector<double> sweep_grid(double theta_min, double theta_max, std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("sweep requires at least 2 samples");
    if (!(theta_min < theta_max)) throw std::invalid_argument("sweep requires theta_min < theta_max");
    std::vector<double> grid(samples);
    const double step = (theta_max - theta_min) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        grid[i] = theta_min + static_cast<double>(i) * step;
    }
    return grid;
}

}  // namespace

std::vector<std::pair<double, double>> sweep_measure(const CouplingTable& x, double theta_min,
                                                     double theta_max, std::size_t samples) {
    const std::vector<double> grid = sweep_grid(theta_min, theta_max, samples);
    require_total(x);
    std::vector<std::pair<double, double>> out(samples);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(samples); ++i) {
        out[i] = {grid[i], measure_continuous_closed(x, grid[i])};
    }
    return out;
}

std::vector<std::pair<double, double>> sweep_measure_serial(const CouplingTable& x,
                                                            double theta_min, double theta_max,
                                                            std::size_t samples) {
    const std::vector<double> grid = sweep_grid(theta_min, theta_max, samples);
    require_total(x);
    std::vector<std::pair<double, double>> out(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        out[i] = {grid[i], measure_continuous_closed(x, grid[i])};
    }
    return out;
}

void MeasureReport::validate() const {
    for (const auto& [theta, m] : theta_samples) {
        if (m < -1e-12 || m > 1.0 + 1e-12) {
            throw numeric_error("measure out of range [0, 1] at theta = " + std::to_string(theta));
        }
        if (theta == 0.0 && m > 1e-14) {
            throw numeric_error("measure at theta = 0 must vanish");
        }
    }
    if (b_gamma < 0.0 || c_s_gamma < 0.0) throw numeric_error("negative slope or exchange bound");
    const double lhs = c_s_gamma * c_s_gamma;
    const double rhs = 4.0 * b_gamma * total_coupling;
    if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::max(lhs, rhs))) {
        throw numeric_error("exchange bound inconsistent with local slope");
    }
}

}  // namespace symbreak
