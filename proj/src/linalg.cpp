#include "symbreak/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "symbreak/errors.hpp"

namespace symbreak {

LuFactors lu_factor(std::size_t n, std::vector<cplx> a) {
    if (a.size() != n * n) throw std::invalid_argument("lu_factor: bad matrix size");
    LuFactors f;
    f.n = n;
    f.lu = std::move(a);
    f.pivot.resize(n);
    std::vector<cplx>& m = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(m[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(m[i * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        f.pivot[k] = static_cast<int>(p);
        if (best == 0.0) throw numeric_error("lu_factor: singular matrix");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
        }
        const cplx inv_piv = 1.0 / m[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx lik = m[i * n + k] * inv_piv;
            m[i * n + k] = lik;
            if (lik != cplx{0.0, 0.0}) {
                for (std::size_t j = k + 1; j < n; ++j) m[i * n + j] -= lik * m[k * n + j];
            }
        }
    }
    return f;
}

std::vector<cplx> lu_solve(const LuFactors& f, std::span<const cplx> b) {
    const std::size_t n = f.n;
    if (b.size() != n) throw std::invalid_argument("lu_solve: rhs size mismatch");
    std::vector<cplx> x(b.begin(), b.end());
    for (std::size_t k = 0; k < n; ++k) {
        std::swap(x[k], x[static_cast<std::size_t>(f.pivot[k])]);
        for (std::size_t i = k + 1; i < n; ++i) x[i] -= f.lu[i * n + k] * x[k];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        cplx s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu[ii * n + j] * x[j];
        x[ii] = s / f.lu[ii * n + ii];
    }
    return x;
}

std::vector<cplx> lu_solve_adjoint(const LuFactors& f, std::span<const cplx> b) {
    // PA = LU  =>  A' = U' L' P, so solve U' y = b, L' z = y, x = P^T z.
    const std::size_t n = f.n;
    if (b.size() != n) throw std::invalid_argument("lu_solve_adjoint: rhs size mismatch");
    std::vector<cplx> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {  // U' is lower triangular
        cplx s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= std::conj(f.lu[j * n + i]) * x[j];
        x[i] = s / std::conj(f.lu[i * n + i]);
    }
    for (std::size_t ii = n; ii-- > 0;) {  // L' is unit upper triangular
        cplx s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= std::conj(f.lu[j * n + ii]) * x[j];
        x[ii] = s;
    }
    for (std::size_t kk = n; kk-- > 0;) {
        std::swap(x[kk], x[static_cast<std::size_t>(f.pivot[kk])]);
    }
    return x;
}

namespace {

double vec_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& e : v) s += std::norm(e);
    return std::sqrt(s);
}

void normalize(std::vector<cplx>& v) {
    const double nrm = vec_norm(v);
    if (nrm == 0.0) return;
    for (cplx& e : v) e /= nrm;
}

std::vector<cplx> start_vector(std::size_t n) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = cplx{1.0 + 0.25 * static_cast<double>(i % 3),
                    0.125 * static_cast<double>(i % 5)};
    }
    normalize(v);
    return v;
}

}  // namespace

double condition_estimate(std::size_t n, std::span<const cplx> a, const LuFactors& f) {
    if (n == 0) return 0.0;
    constexpr int kIters = 12;

    auto apply = [&](std::span<const cplx> v) {
        std::vector<cplx> out(n, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) acc += a[i * n + j] * v[j];
            out[i] = acc;
        }
        return out;
    };
    auto apply_adjoint = [&](std::span<const cplx> v) {
        std::vector<cplx> out(n, cplx{0.0, 0.0});
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i * n + j]) * v[i];
            out[j] = acc;
        }
        return out;
    };

    // sigma_max(A) from power iteration on A'A.
    std::vector<cplx> v = start_vector(n);
    double smax = 0.0;
    for (int it = 0; it < kIters; ++it) {
        std::vector<cplx> u = apply_adjoint(apply(v));
        const double lambda = vec_norm(u);
        if (lambda == 0.0) return 0.0;
        smax = std::sqrt(lambda);
        v = std::move(u);
        normalize(v);
    }

    // sigma_max(A^{-1}) the same way, with solves.
    v = start_vector(n);
    double smax_inv = 0.0;
    for (int it = 0; it < kIters; ++it) {
        std::vector<cplx> u = lu_solve_adjoint(f, lu_solve(f, v));
        const double lambda = vec_norm(u);
        if (lambda == 0.0) break;
        smax_inv = std::sqrt(lambda);
        v = std::move(u);
        normalize(v);
    }

    return smax * smax_inv;
}

}  // namespace symbreak
