#include "symbreak/scatter2d.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include "symbreak/bessel.hpp"
#include "symbreak/errors.hpp"
#include "symbreak/measures.hpp"

namespace symbreak {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kConditionLimit = 1e12;
constexpr int kMaxGlobalOrder = 95;  // keeps Graf Bessel orders within the bessel domain

}  // namespace

void Scene::validate() const {
    if (discs.empty()) throw std::invalid_argument("scene has no discs");
    if (!(wavenumber > 0.0) || !std::isfinite(wavenumber)) {
        throw std::invalid_argument("scene wavenumber must be positive");
    }
    for (const Disc& d : discs) {
        if (!(d.radius > 0.0) || !std::isfinite(d.radius) || !std::isfinite(d.cx) ||
            !std::isfinite(d.cy)) {
            throw std::invalid_argument("disc with non-finite geometry or non-positive radius");
        }
    }
    for (std::size_t i = 0; i < discs.size(); ++i) {
        for (std::size_t j = i + 1; j < discs.size(); ++j) {
            const double dx = discs[i].cx - discs[j].cx;
            const double dy = discs[i].cy - discs[j].cy;
            const double dist = std::hypot(dx, dy);
            if (dist <= discs[i].radius + discs[j].radius) {
                throw std::invalid_argument("discs " + std::to_string(i) + " and " +
                                            std::to_string(j) + " overlap");
            }
        }
    }
}

double Scene::circumscribed_radius() const {
    double r = 0.0;
    for (const Disc& d : discs) r = std::max(r, std::hypot(d.cx, d.cy) + d.radius);
    return r;
}

SimConfig SimConfig::defaults(const Scene& scene) {
    scene.validate();
    double a_max = 0.0;
    for (const Disc& d : scene.discs) a_max = std::max(a_max, d.radius);
    SimConfig cfg;
    cfg.global_order =
        static_cast<int>(std::ceil(scene.wavenumber * scene.circumscribed_radius())) + 10;
    cfg.local_order = static_cast<int>(std::ceil(scene.wavenumber * a_max)) + 8;
    cfg.local_order = std::min(cfg.local_order, cfg.global_order);
    return cfg;
}

void SimConfig::validate() const {
    if (local_order < 1 || global_order < local_order) {
        throw std::invalid_argument("truncation orders must satisfy L >= l >= 1");
    }
    if (global_order > kMaxGlobalOrder) {
        throw numeric_error("global order " + std::to_string(global_order) +
                            " exceeds the supported truncation limit " +
                            std::to_string(kMaxGlobalOrder));
    }
}

std::vector<cplx> single_disc_tmatrix(double radius, double k, int l) {
    if (!(radius > 0.0) || !(k > 0.0)) {
        throw std::invalid_argument("single_disc_tmatrix requires k, radius > 0");
    }
    if (l < 1) throw std::invalid_argument("single_disc_tmatrix requires l >= 1");
    const double ka = k * radius;
    const std::vector<double> j = bessel_j_array(l, ka);
    const std::vector<double> y = bessel_y_array(l, ka);
    std::vector<cplx> t(2 * l + 1);
    for (int m = 0; m <= l; ++m) {
        const cplx h1{j[m], y[m]};
        const cplx tm = -j[m] / h1;
        t[l + m] = tm;
        t[l - m] = tm;  // J and Y share parity, so the ratio is even in m
    }
    return t;
}

ComplexMatrix graf_translation(double dx, double dy, double k, int order_src, int order_dst,
                               TranslationKind kind) {
    if (order_src < 1 || order_dst < 1) {
        throw std::invalid_argument("graf_translation requires truncation orders >= 1");
    }
    if (!(k > 0.0)) throw std::invalid_argument("graf_translation requires k > 0");
    const std::size_t rows = 2 * static_cast<std::size_t>(order_dst) + 1;
    const std::size_t cols = 2 * static_cast<std::size_t>(order_src) + 1;
    ComplexMatrix r(rows, cols);
    for (int mp = -order_dst; mp <= order_dst; ++mp) r.row_labels[mp + order_dst].gamma = mp;
    for (int m = -order_src; m <= order_src; ++m) r.col_labels[m + order_src].gamma = m;

    const double dist = std::hypot(dx, dy);
    if (dist == 0.0) {
        if (kind == TranslationKind::outgoing_to_regular) {
            throw std::invalid_argument(
                "graf_translation: zero displacement is singular for the outgoing kind");
        }
        for (int m = -std::min(order_src, order_dst); m <= std::min(order_src, order_dst); ++m) {
            r.at(m + order_dst, m + order_src) = 1.0;
        }
        return r;
    }

    const int smax = order_src + order_dst;
    const std::vector<double> j = bessel_j_array(smax, k * dist);
    std::vector<double> y;
    if (kind == TranslationKind::outgoing_to_regular) y = bessel_y_array(smax, k * dist);
    const double phi = std::atan2(dy, dx);

    auto radial = [&](int s) -> cplx {
        const int as = std::abs(s);
        const double sign = (s < 0 && as % 2 == 1) ? -1.0 : 1.0;
        if (kind == TranslationKind::regular_to_regular) return sign * j[as];
        return sign * cplx{j[as], y[as]};
    };

    for (int mp = -order_dst; mp <= order_dst; ++mp) {
        for (int m = -order_src; m <= order_src; ++m) {
            const int s = m - mp;
            r.at(mp + order_dst, m + order_src) = radial(s) * std::polar(1.0, s * phi);
        }
    }
    return r;
}

FoldyLaxSystem::FoldyLaxSystem(const Scene& scene, const SimConfig& cfg) {
    scene.validate();
    cfg.validate();
    const double k = scene.wavenumber;
    const int l = cfg.local_order;
    const int L = cfg.global_order;
    n_discs_ = scene.discs.size();
    global_order_ = L;
    local_order_ = l;
    mode_ = cfg.mode;
    const std::size_t p = 2 * static_cast<std::size_t>(l) + 1;
    const std::size_t dim = n_discs_ * p;

    tmats_.reserve(n_discs_);
    in_translate_.reserve(n_discs_);
    out_translate_.reserve(n_discs_);
    for (const Disc& d : scene.discs) {
        tmats_.push_back(single_disc_tmatrix(d.radius, k, l));
        in_translate_.push_back(
            graf_translation(d.cx, d.cy, k, L, l, TranslationKind::regular_to_regular));
        out_translate_.push_back(
            graf_translation(-d.cx, -d.cy, k, l, L, TranslationKind::regular_to_regular));
    }

    // High-order channels pair tiny T entries with huge Hankel translation
    // entries; balance the unknowns by per-channel powers of two (exact in
    // IEEE arithmetic) so the factorized system is well-conditioned.
    scale_.resize(dim);
    for (std::size_t i = 0; i < n_discs_; ++i) {
        for (std::size_t r = 0; r < p; ++r) {
            const double mag = std::abs(tmats_[i][r]);
            scale_[i * p + r] =
                mag > 1e-300 ? std::exp2(std::round(0.5 * std::log2(mag))) : std::exp2(-500.0);
        }
    }

    // System matrix, balanced: I - D^{-1} diag(T_i) H_{ij} D, with H_{ij}
    // the outgoing->regular translation from disc j to disc i.
    std::vector<cplx> a(dim * dim, cplx{0.0, 0.0});
    for (std::size_t idx = 0; idx < dim; ++idx) a[idx * dim + idx] = 1.0;
    for (std::size_t i = 0; i < n_discs_; ++i) {
        for (std::size_t j = 0; j < n_discs_; ++j) {
            if (i == j) continue;
            const ComplexMatrix h = graf_translation(
                scene.discs[i].cx - scene.discs[j].cx, scene.discs[i].cy - scene.discs[j].cy, k,
                l, l, TranslationKind::outgoing_to_regular);
            for (std::size_t r = 0; r < p; ++r) {
                const cplx t_scaled = tmats_[i][r] / scale_[i * p + r];
                for (std::size_t c = 0; c < p; ++c) {
                    a[(i * p + r) * dim + (j * p + c)] = -t_scaled * h.at(r, c) * scale_[j * p + c];
                }
            }
        }
    }

    std::vector<cplx> a_copy = a;
    lu_ = lu_factor(dim, std::move(a_copy));
    condition_estimate_ = symbreak::condition_estimate(dim, a, lu_);
    if (!(condition_estimate_ < kConditionLimit)) {
        throw numeric_error("Foldy-Lax system ill-conditioned: estimate " +
                            std::to_string(condition_estimate_));
    }
}

std::vector<std::vector<cplx>> FoldyLaxSystem::solve(std::span<const cplx> incoming) const {
    const std::size_t p = 2 * static_cast<std::size_t>(local_order_) + 1;
    if (incoming.size() != 2 * static_cast<std::size_t>(global_order_) + 1) {
        throw std::invalid_argument("incoming coefficient vector has wrong length");
    }
    std::vector<cplx> rhs(n_discs_ * p);
    for (std::size_t i = 0; i < n_discs_; ++i) {
        const std::vector<cplx> local = matvec(in_translate_[i], incoming);
        for (std::size_t r = 0; r < p; ++r) {
            rhs[i * p + r] = (tmats_[i][r] / scale_[i * p + r]) * local[r];
        }
    }
    std::vector<cplx> b = lu_solve(lu_, rhs);
    for (std::size_t idx = 0; idx < b.size(); ++idx) b[idx] *= scale_[idx];
    std::vector<std::vector<cplx>> per_disc(n_discs_);
    for (std::size_t i = 0; i < n_discs_; ++i) {
        per_disc[i].assign(b.begin() + static_cast<std::ptrdiff_t>(i * p),
                           b.begin() + static_cast<std::ptrdiff_t>((i + 1) * p));
    }
    return per_disc;
}

std::vector<cplx> FoldyLaxSystem::outgoing_global(
    const std::vector<std::vector<cplx>>& per_disc) const {
    if (per_disc.size() != n_discs_) {
        throw std::invalid_argument("per-disc coefficient count mismatch");
    }
    const std::size_t dim = 2 * static_cast<std::size_t>(global_order_) + 1;
    std::vector<cplx> out(dim, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n_discs_; ++i) {
        const std::vector<cplx> g = matvec(out_translate_[i], per_disc[i]);
        for (std::size_t r = 0; r < dim; ++r) out[r] += g[r];
    }
    return out;
}

std::vector<cplx> FoldyLaxSystem::scatter(std::span<const cplx> incoming) const {
    std::vector<cplx> out = outgoing_global(solve(incoming));
    if (mode_ == OperatorMode::full_s) {
        for (std::size_t r = 0; r < out.size(); ++r) out[r] = incoming[r] + 2.0 * out[r];
    }
    return out;
}

std::vector<std::vector<cplx>> foldy_lax_solve(const Scene& scene, const SimConfig& cfg,
                                               std::span<const cplx> incoming) {
    return FoldyLaxSystem(scene, cfg).solve(incoming);
}

namespace {

std::vector<BasisLabel> multipole_labels(int order) {
    std::vector<BasisLabel> labels(2 * static_cast<std::size_t>(order) + 1);
    for (int m = -order; m <= order; ++m) {
        labels[m + order].gamma = cplx{static_cast<double>(m), 0.0};
    }
    return labels;
}

ComplexMatrix assemble_impl(const Scene& scene, const SimConfig& cfg, bool parallel) {
    const FoldyLaxSystem sys(scene, cfg);
    const int L = cfg.global_order;
    const std::size_t dim = 2 * static_cast<std::size_t>(L) + 1;
    ComplexMatrix s(dim, dim, std::vector<cplx>(dim * dim), multipole_labels(L),
                    multipole_labels(L));

    auto column = [&](std::size_t c) {
        std::vector<cplx> e(dim, cplx{0.0, 0.0});
        e[c] = 1.0;
        const std::vector<cplx> col = sys.scatter(e);
        for (std::size_t r = 0; r < dim; ++r) s.entries[r * dim + c] = col[r];
    };

    if (parallel) {
        std::exception_ptr failure;
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < static_cast<long long>(dim); ++c) {
            try {
                column(static_cast<std::size_t>(c));
            } catch (...) {
#pragma omp critical(symbreak_assemble_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::size_t c = 0; c < dim; ++c) column(c);
    }
    return s;
}

}  // namespace

ComplexMatrix assemble_scattering_operator(const Scene& scene, const SimConfig& cfg) {
    return assemble_impl(scene, cfg, true);
}

ComplexMatrix assemble_scattering_operator_serial(const Scene& scene, const SimConfig& cfg) {
    return assemble_impl(scene, cfg, false);
}

SymmetryGrading rotation_grading(int global_order) {
    if (global_order < 1) throw std::invalid_argument("rotation_grading requires L >= 1");
    std::vector<double> gammas(2 * static_cast<std::size_t>(global_order) + 1);
    for (int m = -global_order; m <= global_order; ++m) {
        gammas[m + global_order] = static_cast<double>(m);
    }
    return SymmetryGrading::continuous(std::move(gammas));
}

ComplexMatrix mirror_operator(int global_order) {
    if (global_order < 1) throw std::invalid_argument("mirror_operator requires L >= 1");
    const int L = global_order;
    const std::size_t dim = 2 * static_cast<std::size_t>(L) + 1;
    ComplexMatrix p(dim, dim, std::vector<cplx>(dim * dim), multipole_labels(L),
                    multipole_labels(L));
    // theta -> -theta sends J_m e^{im theta} to J_m e^{-im theta}
    // = (-1)^m J_{-m} e^{-im theta}: an exchange of +-m with the parity sign
    // of the signed-order radial factor. Eigenvalues are +-1 on the cos/sin
    // combinations.
    for (int m = -L; m <= L; ++m) {
        p.at(-m + L, m + L) = (((m % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

BlackBoxSystem scene_black_box(const Scene& scene, const SimConfig& cfg) {
    auto sys = std::make_shared<FoldyLaxSystem>(scene, cfg);
    BlackBoxSystem box;
    box.in_labels = multipole_labels(cfg.global_order);
    box.out_labels = box.in_labels;
    box.evaluate = [sys](std::span<const cplx> v) { return sys->scatter(v); };
    return box;
}

Scene rotate_scene(const Scene& scene, double alpha) {
    Scene r = scene;
    const double c = std::cos(alpha), s = std::sin(alpha);
    for (Disc& d : r.discs) {
        const double x = d.cx, y = d.cy;
        d.cx = c * x - s * y;
        d.cy = s * x + c * y;
    }
    return r;
}

Scene reflect_scene_x(const Scene& scene) {
    Scene r = scene;
    for (Disc& d : r.discs) d.cy = -d.cy;
    return r;
}

double convergence_delta_m(const Scene& scene, const SimConfig& cfg) {
    SimConfig finer = cfg;
    finer.global_order += 2;
    const ComplexMatrix coarse = assemble_scattering_operator(scene, cfg);
    const ComplexMatrix fine = assemble_scattering_operator(scene, finer);
    const CouplingTable tc = coupling_strengths(
        coarse, grading_from_labels(coarse.col_labels, SymmetryKind::continuous),
        grading_from_labels(coarse.row_labels, SymmetryKind::continuous));
    const CouplingTable tf = coupling_strengths(
        fine, grading_from_labels(fine.col_labels, SymmetryKind::continuous),
        grading_from_labels(fine.row_labels, SymmetryKind::continuous));
    double delta = 0.0;
    constexpr std::size_t kProbe = 181;
    for (std::size_t i = 0; i < kProbe; ++i) {
        const double theta = -kPi + 2.0 * kPi * static_cast<double>(i) / (kProbe - 1);
        delta = std::max(delta, std::abs(measure_continuous_closed(tc, theta) -
                                         measure_continuous_closed(tf, theta)));
    }
    return delta;
}

}  // namespace symbreak
