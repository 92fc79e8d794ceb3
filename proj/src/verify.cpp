#include "symbreak/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "symbreak/bessel.hpp"
#include "symbreak/errors.hpp"
#include "symbreak/fixtures.hpp"
#include "symbreak/grading.hpp"
#include "symbreak/io.hpp"
#include "symbreak/matrix.hpp"
#include "symbreak/measures.hpp"
#include "symbreak/scatter2d.hpp"

namespace symbreak {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CheckOutcome {
    bool pass;
    std::string detail;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

bool bitwise_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.n_rows != b.n_rows || a.n_cols != b.n_cols) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i] != b.entries[i]) return false;
    }
    return true;
}

SymmetryGrading grading_of(const std::vector<double>& gammas) {
    return SymmetryGrading::continuous(gammas);
}

ComplexMatrix labeled_with_gammas(ComplexMatrix m, const std::vector<double>& g_in,
                                  const std::vector<double>& g_out) {
    for (std::size_t j = 0; j < m.n_cols; ++j) m.col_labels[j].gamma = cplx{g_in[j], 0.0};
    for (std::size_t i = 0; i < m.n_rows; ++i) m.row_labels[i].gamma = cplx{g_out[i], 0.0};
    return m;
}

// ---- operator_core ----

CheckOutcome check_frobenius_unitary_invariance(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(3, 10));
        const ComplexMatrix a = random_matrix(rng, n, n);
        const ComplexMatrix u = random_unitary(rng, n);
        const ComplexMatrix v = random_unitary(rng, n);
        const double base = frobenius_norm_sq(a);
        const double transformed = frobenius_norm_sq(matmul(matmul(u, a), v));
        worst = std::max(worst, rel_diff(base, transformed));
    }
    return {worst <= 1e-12, "max rel err " + num(worst)};
}

CheckOutcome check_trace_adjoint_real(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 12));
        const ComplexMatrix a = random_matrix(rng, n, n);
        const cplx t = trace(matmul(adjoint(a), a));
        if (t.real() < 0.0) return {false, "negative trace"};
        worst = std::max(worst, std::abs(t.imag()) / std::max(1.0, t.real()));
    }
    return {worst <= 1e-13, "max imag/real " + num(worst)};
}

CheckOutcome check_matmul_associativity(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 9));
        const ComplexMatrix a = random_matrix(rng, n, n);
        const ComplexMatrix b = random_matrix(rng, n, n);
        const ComplexMatrix c = random_matrix(rng, n, n);
        worst = std::max(worst, relative_frobenius_error(matmul(matmul(a, b), c),
                                                         matmul(a, matmul(b, c))));
    }
    return {worst <= 1e-12, "max rel err " + num(worst)};
}

CheckOutcome check_matmul_parallel_matches_serial(Rng& rng) {
    for (int rep = 0; rep < 6; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(5, 40));
        const ComplexMatrix a = random_matrix(rng, n, n);
        const ComplexMatrix b = random_matrix(rng, n, n);
        if (!bitwise_equal(matmul(a, b), matmul_serial(a, b))) {
            return {false, "parallel product differs from serial reference"};
        }
    }
    return {true, "bitwise identical"};
}

// ---- grading ----

CheckOutcome check_sum_rule(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(4, 14));
        const ComplexMatrix s = random_matrix(rng, n, n);
        const auto g_in = random_integer_gammas(rng, n, -2, 2);
        const auto g_out = random_integer_gammas(rng, n, -2, 2);
        const CouplingTable t = coupling_strengths(s, grading_of(g_in), grading_of(g_out));
        worst = std::max(worst, rel_diff(t.total, frobenius_norm_sq(s)));
    }
    return {worst <= 1e-12, "max rel err " + num(worst)};
}

CheckOutcome check_intensity_matches_operator(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(4, 12));
        const ComplexMatrix s = random_matrix(rng, n, n);
        const auto g_in = random_integer_gammas(rng, n, -2, 2);
        const auto g_out = random_integer_gammas(rng, n, -2, 2);
        const CouplingTable a = coupling_strengths(s, grading_of(g_in), grading_of(g_out));
        const CouplingTable b =
            coupling_from_intensities(matrix_black_box(s), grading_of(g_in), grading_of(g_out));
        for (std::size_t i = 0; i < a.x.size(); ++i) {
            const double scale = std::max(std::max(a.x[i], b.x[i]), 1e-300);
            worst = std::max(worst, std::abs(a.x[i] - b.x[i]) / scale);
        }
    }
    return {worst <= 1e-12, "max entrywise rel err " + num(worst)};
}

CheckOutcome check_c3_selection_rule() {
    const Scene scene = scene_c3();
    const SimConfig cfg = SimConfig::defaults(scene);
    const ComplexMatrix s = assemble_scattering_operator(scene, cfg);
    const SymmetryGrading g = rotation_grading(cfg.global_order);
    const CouplingTable t = coupling_strengths(s, g, g);
    double worst = 0.0;
    const int L = cfg.global_order;
    for (int mo = -L; mo <= L; ++mo) {
        for (int mi = -L; mi <= L; ++mi) {
            if (((mo - mi) % 3 + 3) % 3 != 0) {
                worst = std::max(worst, t.at(mo + L, mi + L));
            }
        }
    }
    return {worst <= 1e-12 * t.total, "max off-rule X / total " + num(worst / t.total)};
}

CheckOutcome check_eta_permutation_invariance(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 6; ++rep) {
        const std::size_t n = 12;
        const ComplexMatrix s = random_matrix(rng, n, n);
        const auto g_in = random_integer_gammas(rng, n, -1, 1);
        const auto g_out = random_integer_gammas(rng, n, -1, 1);
        const CouplingTable base = coupling_strengths(s, grading_of(g_in), grading_of(g_out));

        // Permute basis vectors inside each gamma group on both sides.
        auto group_permutation = [&rng](const std::vector<double>& gams) {
            std::vector<std::size_t> perm(gams.size());
            for (std::size_t i = 0; i < gams.size(); ++i) perm[i] = i;
            for (int g = -1; g <= 1; ++g) {
                std::vector<std::size_t> members;
                for (std::size_t i = 0; i < gams.size(); ++i) {
                    if (gams[i] == static_cast<double>(g)) members.push_back(i);
                }
                for (std::size_t i = members.size(); i-- > 1;) {
                    const std::size_t j =
                        static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i)));
                    std::swap(perm[members[i]], perm[members[j]]);
                }
            }
            return perm;
        };
        const auto row_perm = group_permutation(g_out);
        const auto col_perm = group_permutation(g_in);
        ComplexMatrix p(s.n_rows, s.n_cols);
        std::vector<double> pg_in(g_in.size()), pg_out(g_out.size());
        for (std::size_t i = 0; i < s.n_rows; ++i) {
            pg_out[i] = g_out[row_perm[i]];
            for (std::size_t j = 0; j < s.n_cols; ++j) {
                p.at(i, j) = s.at(row_perm[i], col_perm[j]);
                pg_in[j] = g_in[col_perm[j]];
            }
        }
        const CouplingTable permuted = coupling_strengths(p, grading_of(pg_in), grading_of(pg_out));
        for (std::size_t i = 0; i < base.x.size(); ++i) {
            const double scale = std::max(std::max(base.x[i], permuted.x[i]), 1e-300);
            worst = std::max(worst, std::abs(base.x[i] - permuted.x[i]) / scale);
        }
    }
    return {worst <= 1e-13, "max entrywise rel err " + num(worst)};
}

// ---- measures ----

CheckOutcome check_measure_range(Rng& rng) {
    double lo = 0.0, hi = 1.0;
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 12));
        const ComplexMatrix s = random_matrix(rng, n, n);
        double m;
        if (rep % 2 == 0) {
            m = measure_direct(s, random_unitary(rng, n));
        } else {
            const auto g = random_integer_gammas(rng, n, -3, 3);
            m = measure_direct(s, build_continuous_transform(grading_of(g), rng.uniform(-kPi, kPi)));
        }
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    return {lo >= 0.0 && hi <= 1.0 + 1e-12, "range [" + num(lo) + ", " + num(hi) + "]"};
}

CheckOutcome check_oracle_triangle(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(4, 12));
        const auto g = random_integer_gammas(rng, n, -3, 3);
        const ComplexMatrix s = labeled_with_gammas(random_matrix(rng, n, n), g, g);
        const double theta = rng.uniform(-0.5, 0.5);
        const CouplingTable t = coupling_strengths(s, grading_of(g), grading_of(g));
        const double direct = measure_direct(s, build_continuous_transform(grading_of(g), theta));
        const double closed = measure_continuous_closed(t, theta);
        const double series = measure_continuous_series(t, theta, 24);
        worst = std::max({worst, rel_diff(direct, closed), rel_diff(closed, series)});
    }
    return {worst <= 1e-10, "max rel err " + num(worst)};
}

CheckOutcome check_discrete_continuous_consistency(Rng& rng) {
    double worst = 0.0;
    const double theta_star = 0.37;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(4, 12));
        const auto g = random_integer_gammas(rng, n, -3, 3);
        const ComplexMatrix s = random_matrix(rng, n, n);
        const CouplingTable cont = coupling_strengths(s, grading_of(g), grading_of(g));
        std::vector<cplx> phases(n);
        for (std::size_t i = 0; i < n; ++i) phases[i] = std::polar(1.0, -theta_star * g[i]);
        const SymmetryGrading disc = SymmetryGrading::discrete(phases);
        const CouplingTable dt = coupling_strengths(s, disc, disc);
        worst = std::max(worst, std::abs(measure_discrete(dt) -
                                         measure_continuous_closed(cont, theta_star)));
    }
    return {worst <= 1e-12, "max abs err " + num(worst)};
}

CheckOutcome check_scale_invariance(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(3, 10));
        const ComplexMatrix s = random_matrix(rng, n, n);
        const ComplexMatrix t = random_unitary(rng, n);
        const cplx c = rng.cgauss() * 3.0;
        if (std::abs(c) < 1e-3) continue;
        worst = std::max(worst, std::abs(measure_direct(s, t) - measure_direct(scale(s, c), t)));
    }
    return {worst <= 1e-13, "max abs err " + num(worst)};
}

CheckOutcome check_periodicity(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(4, 12));
        const auto g = random_integer_gammas(rng, n, -3, 3);
        const ComplexMatrix s = random_matrix(rng, n, n);
        const CouplingTable t = coupling_strengths(s, grading_of(g), grading_of(g));
        const double theta = rng.uniform(-kPi, kPi);
        worst = std::max(worst, std::abs(measure_continuous_closed(t, theta + 2.0 * kPi) -
                                         measure_continuous_closed(t, theta)));
    }
    return {worst <= 1e-13, "max abs err " + num(worst)};
}

CheckOutcome check_quadratic_onset(Rng& rng) {
    double worst_ratio = 1.0;
    for (int rep = 0; rep < 6; ++rep) {
        const CouplingTable t = random_coupling_table(rng, 4, 4, -3, 3);
        const double b = local_slope(t);
        double kmin = 1e300, kmax = 0.0;
        for (double theta : {1e-1, 1e-2, 1e-3}) {
            const double k = std::abs(measure_continuous_closed(t, theta) - b * theta * theta) /
                             (theta * theta * theta * theta);
            kmin = std::min(kmin, k);
            kmax = std::max(kmax, k);
        }
        if (kmax == 0.0) continue;  // exactly quadratic table
        worst_ratio = std::max(worst_ratio, kmax / kmin);
    }
    return {worst_ratio <= 1.25, "max K spread " + num(worst_ratio)};
}

CheckOutcome check_exchange_bound(Rng& rng) {
    int violations = 0;
    double worst_margin = -1e300;
    for (int rep = 0; rep < 4; ++rep) {
        const std::size_t n = 12;
        const auto g = random_integer_gammas(rng, n, -3, 3);
        const ComplexMatrix s = random_unitary(rng, n);
        if (unitarity_residual(s) > 1e-10) return {false, "fixture S not unitary"};
        const CouplingTable t = coupling_strengths(s, grading_of(g), grading_of(g));
        const double c = exchange_ability(t);
        for (int v = 0; v < 1000; ++v) {
            std::vector<cplx> in(n);
            double norm = 0.0;
            for (cplx& e : in) {
                e = rng.cgauss();
                norm += std::norm(e);
            }
            norm = std::sqrt(norm);
            for (cplx& e : in) e /= norm;
            const std::vector<cplx> out = matvec(s, in);
            double gamma_in = 0.0, gamma_out = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                gamma_in += g[i] * std::norm(in[i]);
                gamma_out += g[i] * std::norm(out[i]);
            }
            const double margin = std::abs(gamma_out - gamma_in) - c;
            worst_margin = std::max(worst_margin, margin);
            if (margin > 1e-10) ++violations;
        }
    }
    return {violations == 0, "violations " + std::to_string(violations) + ", worst margin " +
                                 num(worst_margin)};
}

CheckOutcome check_nonunitary_rejected(Rng& rng) {
    const ComplexMatrix s = random_matrix(rng, 4, 4);
    ComplexMatrix t = ComplexMatrix::identity(4);
    t.at(0, 0) = 2.0;  // intentionally non-unitary
    try {
        (void)measure_direct(s, t);
    } catch (const numeric_error&) {
        return {true, "unitarity precondition failure reported"};
    }
    return {false, "non-unitary T accepted"};
}

// ---- scatter2d ----

CheckOutcome check_rotation_covariance() {
    const Scene scene = scene_c3();
    const SimConfig cfg = SimConfig::defaults(scene);
    const double alpha = 0.7;
    const ComplexMatrix s = assemble_scattering_operator(scene, cfg);
    const ComplexMatrix s_rot = assemble_scattering_operator(rotate_scene(scene, alpha), cfg);
    const ComplexMatrix t = build_continuous_transform(rotation_grading(cfg.global_order), alpha);
    const double err = relative_frobenius_error(s_rot, matmul(matmul(t, s), adjoint(t)));
    return {err <= 1e-8, "rel err " + num(err)};
}

CheckOutcome check_mirror_covariance() {
    const Scene scene = scene_c3();
    const SimConfig cfg = SimConfig::defaults(scene);
    const ComplexMatrix s = assemble_scattering_operator(scene, cfg);
    const ComplexMatrix s_ref = assemble_scattering_operator(reflect_scene_x(scene), cfg);
    const ComplexMatrix p = mirror_operator(cfg.global_order);
    const double err = relative_frobenius_error(s_ref, matmul(matmul(p, s), p));
    return {err <= 1e-8, "rel err " + num(err)};
}

CheckOutcome check_mirror_equals_rotation_pi() {
    double worst = 0.0;
    for (int n_small : {1, 3}) {
        const Scene scene = scene_stack(n_small);
        const SimConfig cfg = SimConfig::defaults(scene);
        const ComplexMatrix s = assemble_scattering_operator(scene, cfg);
        const double m_mirror = measure_direct(s, mirror_operator(cfg.global_order));
        const double m_pi =
            measure_direct(s, build_continuous_transform(rotation_grading(cfg.global_order), kPi));
        worst = std::max(worst, std::abs(m_mirror - m_pi));
    }
    return {worst <= 1e-10, "max abs err " + num(worst)};
}

CheckOutcome check_centered_disc_symmetric() {
    const Scene scene = scene_centered_disc();
    const SimConfig cfg = SimConfig::defaults(scene);
    const ComplexMatrix s = assemble_scattering_operator(scene, cfg);
    const SymmetryGrading g = rotation_grading(cfg.global_order);
    const CouplingTable t = coupling_strengths(s, g, g);
    double max_m = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double theta = -kPi + 2.0 * kPi * i / 100.0;
        max_m = std::max(max_m, measure_continuous_closed(t, theta));
    }
    const double b = local_slope(t);
    return {max_m <= 1e-12 && b <= 1e-14, "max M " + num(max_m) + ", B " + num(b)};
}

CheckOutcome check_c3_zeros() {
    const Scene scene = scene_c3();
    const SimConfig cfg = SimConfig::defaults(scene);
    const ComplexMatrix s = assemble_scattering_operator(scene, cfg);
    const SymmetryGrading g = rotation_grading(cfg.global_order);
    const CouplingTable t = coupling_strengths(s, g, g);
    const double m1 = measure_continuous_closed(t, 2.0 * kPi / 3.0);
    const double m2 = measure_continuous_closed(t, -2.0 * kPi / 3.0);
    return {m1 <= 1e-10 && m2 <= 1e-10, "M(2pi/3) " + num(m1) + ", M(-2pi/3) " + num(m2)};
}

CheckOutcome check_truncation_convergence() {
    const Scene scene = scene_stack(1);
    const double delta = convergence_delta_m(scene, SimConfig::defaults(scene));
    return {delta <= 1e-6, "max |dM| " + num(delta)};
}

CheckOutcome check_channel_unitarity() {
    const std::vector<cplx> t = single_disc_tmatrix(1.0, fixture_wavenumber(), 15);
    double worst = 0.0;
    for (int m = 0; m <= 15; ++m) {
        worst = std::max(worst, std::abs(std::abs(1.0 + 2.0 * t[15 + m]) - 1.0));
        if (t[15 + m] != t[15 - m]) return {false, "t_{-m} != t_m"};
    }
    return {worst <= 1e-12, "max | |1+2t|-1 | " + num(worst)};
}

CheckOutcome check_wronskian() {
    double worst = 0.0;
    for (int m : {0, 1, 5, 12, 30, 60}) {
        for (double x : {0.6, 2.5, 9.0, 17.0, 33.0, 49.0}) {
            const double w = bessel_j(m + 1, x) * bessel_y(m, x) -
                             bessel_j(m, x) * bessel_y(m + 1, x);
            worst = std::max(worst, std::abs(w - 2.0 / (kPi * x)));
        }
    }
    return {worst <= 1e-12, "max abs err " + num(worst)};
}

CheckOutcome check_graf_identities() {
    const double k = fixture_wavenumber();
    // Zero displacement is the identity.
    const ComplexMatrix id = graf_translation(0.0, 0.0, k, 8, 8,
                                              TranslationKind::regular_to_regular);
    if (relative_frobenius_error(id, ComplexMatrix::identity(17)) != 0.0) {
        return {false, "d = 0 translation is not the identity"};
    }
    // Translate there and back with a generous middle truncation.
    const double dx = 0.35, dy = -0.2;
    const ComplexMatrix fwd = graf_translation(dx, dy, k, 10, 32,
                                               TranslationKind::regular_to_regular);
    const ComplexMatrix bwd = graf_translation(-dx, -dy, k, 32, 10,
                                               TranslationKind::regular_to_regular);
    const double round_err = relative_frobenius_error(matmul(bwd, fwd),
                                                      ComplexMatrix::identity(21));
    if (round_err > 1e-8) return {false, "round trip rel err " + num(round_err)};

    // Plane wave e^{ikx}: coefficients i^m about the origin; translating to
    // (x0, 0) must multiply them by e^{ik x0}.
    const int src = 32, dst = 8;
    const double x0 = 0.5;
    const cplx i_pow[4] = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
    std::vector<cplx> alpha(2 * src + 1);
    for (int m = -src; m <= src; ++m) alpha[m + src] = i_pow[((m % 4) + 4) % 4];
    const ComplexMatrix tr = graf_translation(x0, 0.0, k, src, dst,
                                              TranslationKind::regular_to_regular);
    const std::vector<cplx> shifted = matvec(tr, alpha);
    const cplx phase = std::polar(1.0, k * x0);
    double worst = 0.0;
    for (int m = -dst; m <= dst; ++m) {
        const cplx want = phase * i_pow[((m % 4) + 4) % 4];
        worst = std::max(worst, std::abs(shifted[m + dst] - want));
    }
    if (worst > 1e-10) return {false, "plane-wave translation err " + num(worst)};
    return {true, "round trip " + num(round_err) + ", plane wave " + num(worst)};
}

// ---- cli_io ----

std::filesystem::path verify_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "symbreak_verify";
    std::filesystem::create_directories(dir);
    return dir;
}

bool same_bytes(const std::filesystem::path& a, const std::filesystem::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

CheckOutcome check_file_round_trips(Rng& rng) {
    const auto dir = verify_dir();
    const std::size_t n = 7;
    const auto g = random_integer_gammas(rng, n, -2, 2);
    const ComplexMatrix s = labeled_with_gammas(random_matrix(rng, n, n), g, g);

    const auto ma = dir / "op_a.txt";
    const auto mb = dir / "op_b.txt";
    write_matrix_file(ma.string(), s);
    const ComplexMatrix back = read_matrix_file(ma.string());
    if (!bitwise_equal(s, back)) return {false, "operator values changed in round trip"};
    write_matrix_file(mb.string(), back);
    if (!same_bytes(ma, mb)) return {false, "operator file bytes changed in round trip"};

    const CouplingTable t = coupling_strengths(s, grading_of(g), grading_of(g));
    const auto ta = dir / "table_a.txt";
    const auto tb = dir / "table_b.txt";
    write_coupling_file(ta.string(), t);
    const CouplingTable tback = read_coupling_file(ta.string());
    for (std::size_t i = 0; i < t.x.size(); ++i) {
        if (t.x[i] != tback.x[i]) return {false, "coupling values changed in round trip"};
    }
    write_coupling_file(tb.string(), tback);
    if (!same_bytes(ta, tb)) return {false, "coupling file bytes changed in round trip"};

    const auto sa = dir / "sweep_a.csv";
    const auto sb = dir / "sweep_b.csv";
    const auto samples = sweep_measure(t, -kPi, kPi, 101);
    write_sweep_csv(sa.string(), samples);
    write_sweep_csv(sb.string(), read_sweep_csv(sa.string()));
    if (!same_bytes(sa, sb)) return {false, "sweep CSV bytes changed in round trip"};
    return {true, "operator, coupling table, and CSV round trips bit-exact"};
}

CheckOutcome check_dual_path_scenes() {
    double worst = 0.0;
    for (int fixture = 0; fixture < 3; ++fixture) {
        const Scene scene = fixture == 0   ? scene_centered_disc()
                            : fixture == 1 ? scene_stack(1)
                                           : scene_c3();
        const SimConfig cfg = SimConfig::defaults(scene);
        const SymmetryGrading g = rotation_grading(cfg.global_order);
        const CouplingTable from_op =
            coupling_strengths(assemble_scattering_operator(scene, cfg), g, g);
        const CouplingTable from_exp = coupling_from_intensities(scene_black_box(scene, cfg), g, g);
        for (std::size_t i = 0; i < from_op.x.size(); ++i) {
            const double scale = std::max(std::max(from_op.x[i], from_exp.x[i]), 1e-300);
            worst = std::max(worst, std::abs(from_op.x[i] - from_exp.x[i]) / scale);
        }
    }
    return {worst <= 1e-12, "max entrywise rel err " + num(worst)};
}

CheckOutcome check_determinism() {
    const Scene scene = scene_stack(1);
    const SimConfig cfg = SimConfig::defaults(scene);
    const ComplexMatrix a = assemble_scattering_operator(scene, cfg);
    const ComplexMatrix b = assemble_scattering_operator(scene, cfg);
    if (!bitwise_equal(a, b)) return {false, "repeated assembly differs"};
    const ComplexMatrix c = assemble_scattering_operator_serial(scene, cfg);
    if (!bitwise_equal(a, c)) return {false, "parallel assembly differs from serial"};

    const SymmetryGrading g = rotation_grading(cfg.global_order);
    const CouplingTable ti = coupling_from_intensities(scene_black_box(scene, cfg), g, g);
    const CouplingTable ts = coupling_from_intensities_serial(scene_black_box(scene, cfg), g, g);
    for (std::size_t i = 0; i < ti.x.size(); ++i) {
        if (ti.x[i] != ts.x[i]) return {false, "parallel intensity table differs from serial"};
    }
    const CouplingTable tbl = coupling_strengths(a, g, g);
    const auto sp = sweep_measure(tbl, -kPi, kPi, 721);
    const auto ss = sweep_measure_serial(tbl, -kPi, kPi, 721);
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sp[i] != ss[i]) return {false, "parallel sweep differs from serial"};
    }
    return {true, "assembly, intensity table, and sweep bitwise reproducible"};
}

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed) {
    struct Entry {
        const char* name;
        std::function<CheckOutcome(Rng&)> fn;
    };
    const std::vector<Entry> entries = {
        {"operator_core/frobenius_unitary_invariance", check_frobenius_unitary_invariance},
        {"operator_core/trace_adjoint_real_nonnegative", check_trace_adjoint_real},
        {"operator_core/matmul_associativity", check_matmul_associativity},
        {"operator_core/matmul_parallel_serial", check_matmul_parallel_matches_serial},
        {"grading/coupling_sum_rule", check_sum_rule},
        {"grading/intensity_equals_operator", check_intensity_matches_operator},
        {"grading/c3_selection_rule", [](Rng&) { return check_c3_selection_rule(); }},
        {"grading/eta_permutation_invariance", check_eta_permutation_invariance},
        {"measures/range", check_measure_range},
        {"measures/oracle_triangle", check_oracle_triangle},
        {"measures/discrete_continuous_consistency", check_discrete_continuous_consistency},
        {"measures/scale_invariance", check_scale_invariance},
        {"measures/periodicity", check_periodicity},
        {"measures/quadratic_onset", check_quadratic_onset},
        {"measures/exchange_bound", check_exchange_bound},
        {"measures/nonunitary_rejected", check_nonunitary_rejected},
        {"scatter2d/rotation_covariance", [](Rng&) { return check_rotation_covariance(); }},
        {"scatter2d/mirror_covariance", [](Rng&) { return check_mirror_covariance(); }},
        {"scatter2d/mirror_equals_rotation_pi",
         [](Rng&) { return check_mirror_equals_rotation_pi(); }},
        {"scatter2d/centered_disc_symmetric", [](Rng&) { return check_centered_disc_symmetric(); }},
        {"scatter2d/c3_zeros", [](Rng&) { return check_c3_zeros(); }},
        {"scatter2d/truncation_convergence", [](Rng&) { return check_truncation_convergence(); }},
        {"scatter2d/channel_unitarity", [](Rng&) { return check_channel_unitarity(); }},
        {"scatter2d/bessel_wronskian", [](Rng&) { return check_wronskian(); }},
        {"scatter2d/graf_identities", [](Rng&) { return check_graf_identities(); }},
        {"cli_io/file_round_trips", check_file_round_trips},
        {"cli_io/dual_path_scenes", [](Rng&) { return check_dual_path_scenes(); }},
        {"cli_io/determinism", [](Rng&) { return check_determinism(); }},
    };

    auto fnv1a = [](const char* s) {
        std::uint64_t h = 1469598103934665603ULL;
        for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 1099511628211ULL;
        return h;
    };

    std::vector<CheckResult> results;
    results.reserve(entries.size());
    for (const Entry& entry : entries) {
        Rng rng(seed ^ fnv1a(entry.name));
        CheckResult r;
        r.name = entry.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            const CheckOutcome outcome = entry.fn(rng);
            r.pass = outcome.pass;
            r.detail = outcome.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                   .count();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace symbreak
