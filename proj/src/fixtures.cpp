#include "symbreak/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symbreak {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double Rng::gauss() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on the raw uniform stream.
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

cplx Rng::unit_phase() { return std::polar(1.0, uniform(-kPi, kPi)); }

ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (cplx& e : m.entries) e = rng.cgauss();
    return m;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
    ComplexMatrix m = random_matrix(rng, n, n);
    // Modified Gram-Schmidt on columns, run twice.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(m.at(i, k)) * m.at(i, j);
                for (std::size_t i = 0; i < n; ++i) m.at(i, j) -= proj * m.at(i, k);
            }
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) norm += std::norm(m.at(i, j));
            norm = std::sqrt(norm);
            if (norm == 0.0) throw std::runtime_error("degenerate random matrix");
            for (std::size_t i = 0; i < n; ++i) m.at(i, j) /= norm;
        }
    }
    return m;
}

std::vector<double> random_integer_gammas(Rng& rng, std::size_t n, int lo, int hi) {
    std::vector<double> g(n);
    for (double& v : g) v = static_cast<double>(rng.uniform_int(lo, hi));
    return g;
}

CouplingTable random_coupling_table(Rng& rng, std::size_t n_in, std::size_t n_out, int lo,
                                    int hi) {
    if (hi - lo + 1 < static_cast<int>(std::max(n_in, n_out))) {
        throw std::invalid_argument("gamma alphabet too small for requested table");
    }
    CouplingTable t;
    t.kind = SymmetryKind::continuous;
    // Distinct ascending integer alphabets on both sides.
    auto pick = [&](std::size_t count) {
        std::vector<int> all;
        for (int v = lo; v <= hi; ++v) all.push_back(v);
        for (std::size_t i = all.size(); i-- > 1;) {
            std::swap(all[i], all[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i)))]);
        }
        all.resize(count);
        std::sort(all.begin(), all.end());
        std::vector<cplx> out;
        for (int v : all) out.emplace_back(static_cast<double>(v), 0.0);
        return out;
    };
    t.incoming_gammas = pick(n_in);
    t.outgoing_gammas = pick(n_out);
    t.x.resize(n_in * n_out);
    for (double& v : t.x) v = rng.uniform(0.0, 1.0);
    // Keep some genuinely zero cells and guarantee off-diagonal mass.
    for (double& v : t.x) {
        if (v < 0.2) v = 0.0;
    }
    bool off_diag = false;
    for (std::size_t o = 0; o < n_out && !off_diag; ++o) {
        for (std::size_t i = 0; i < n_in; ++i) {
            if (t.outgoing_gammas[o] != t.incoming_gammas[i] && t.at(o, i) > 0.0) {
                off_diag = true;
                break;
            }
        }
    }
    if (!off_diag) {
        t.at(0, n_in - 1) = 0.5;  // gammas are distinct ascending, so this cell is off-diagonal
    }
    double total = 0.0;
    for (double v : t.x) total += v;
    t.total = total;
    return t;
}

std::vector<cplx> random_unimodular_gammas(Rng& rng, std::size_t n, double min_gap) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<cplx> g(n);
        for (cplx& v : g) v = rng.unit_phase();
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (std::abs(g[i] - g[j]) < min_gap) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return g;
    }
    throw std::runtime_error("could not draw separated unimodular eigenvalues");
}

namespace {
constexpr double kBigRadius = 1.0;
constexpr double kSmallRadius = 0.3;
constexpr double kGap = 0.05;
}  // namespace

double fixture_wavenumber() { return 2.0 * kPi; }

Scene scene_centered_disc() {
    Scene s;
    s.wavenumber = fixture_wavenumber();
    s.discs.push_back({0.0, 0.0, kBigRadius});
    return s;
}

Scene scene_stack(int n_small) {
    Scene s = scene_centered_disc();
    double y = kBigRadius + kGap + kSmallRadius;
    for (int i = 0; i < n_small; ++i) {
        s.discs.push_back({0.0, y, kSmallRadius});
        y += 2.0 * kSmallRadius + kGap;
    }
    return s;
}

Scene scene_c3() {
    Scene s = scene_centered_disc();
    const double rho = kBigRadius + kGap + kSmallRadius;
    for (int j = 0; j < 3; ++j) {
        const double phi = 0.5 * kPi + 2.0 * kPi * j / 3.0;
        s.discs.push_back({rho * std::cos(phi), rho * std::sin(phi), kSmallRadius});
    }
    return s;
}

}  // namespace symbreak
