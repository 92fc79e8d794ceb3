#include "symbreak/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace symbreak {

std::vector<BasisLabel> default_labels(std::size_t n) {
    std::vector<BasisLabel> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i].eta = {static_cast<long long>(i)};
    }
    return labels;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : n_rows(rows),
      n_cols(cols),
      entries(rows * cols, cplx{0.0, 0.0}),
      row_labels(default_labels(rows)),
      col_labels(default_labels(cols)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data,
                             std::vector<BasisLabel> rlabels, std::vector<BasisLabel> clabels)
    : n_rows(rows),
      n_cols(cols),
      entries(std::move(data)),
      row_labels(std::move(rlabels)),
      col_labels(std::move(clabels)) {
    validate();
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

namespace {

bool label_less(const BasisLabel& a, const BasisLabel& b) {
    if (a.gamma.real() != b.gamma.real()) return a.gamma.real() < b.gamma.real();
    if (a.gamma.imag() != b.gamma.imag()) return a.gamma.imag() < b.gamma.imag();
    return a.eta < b.eta;
}

void check_unique(const std::vector<BasisLabel>& labels, const char* which) {
    std::vector<const BasisLabel*> seen(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) seen[i] = &labels[i];
    std::sort(seen.begin(), seen.end(),
              [](const BasisLabel* a, const BasisLabel* b) { return label_less(*a, *b); });
    for (std::size_t i = 1; i < seen.size(); ++i) {
        if (*seen[i] == *seen[i - 1]) {
            throw std::invalid_argument(std::string("duplicate (gamma, eta) basis label in ") +
                                        which + " labels");
        }
    }
}

}  // namespace

void ComplexMatrix::validate() const {
    if (entries.size() != n_rows * n_cols) {
        throw std::invalid_argument("matrix entry count does not match rows*cols");
    }
    if (row_labels.size() != n_rows || col_labels.size() != n_cols) {
        throw std::invalid_argument("matrix label list lengths do not match dimensions");
    }
    check_unique(row_labels, "row");
    check_unique(col_labels, "col");
}

namespace {

// One output row; identical arithmetic order in the serial and parallel paths.
void matmul_row(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t i, cplx* out) {
    const std::size_t n = a.n_cols;
    const std::size_t cols = b.n_cols;
    for (std::size_t j = 0; j < cols; ++j) out[j] = cplx{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a.at(i, k);
        const cplx* brow = &b.entries[k * cols];
        for (std::size_t j = 0; j < cols; ++j) out[j] += aik * brow[j];
    }
}

void matmul_check(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.n_cols != b.n_rows) {
        throw std::invalid_argument("matmul dimension mismatch: " + std::to_string(a.n_rows) +
                                    "x" + std::to_string(a.n_cols) + " * " +
                                    std::to_string(b.n_rows) + "x" + std::to_string(b.n_cols));
    }
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    matmul_check(a, b);
    ComplexMatrix c(a.n_rows, b.n_cols, std::vector<cplx>(a.n_rows * b.n_cols), a.row_labels,
                    b.col_labels);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(a.n_rows); ++i) {
        matmul_row(a, b, static_cast<std::size_t>(i), &c.entries[i * c.n_cols]);
    }
    return c;
}

ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
    matmul_check(a, b);
    ComplexMatrix c(a.n_rows, b.n_cols, std::vector<cplx>(a.n_rows * b.n_cols), a.row_labels,
                    b.col_labels);
    for (std::size_t i = 0; i < a.n_rows; ++i) {
        matmul_row(a, b, i, &c.entries[i * c.n_cols]);
    }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix r(a.n_cols, a.n_rows, std::vector<cplx>(a.entries.size()), a.col_labels,
                    a.row_labels);
    for (std::size_t i = 0; i < a.n_rows; ++i) {
        for (std::size_t j = 0; j < a.n_cols; ++j) {
            r.at(j, i) = std::conj(a.at(i, j));
        }
    }
    return r;
}

double frobenius_norm_sq(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& e : a.entries) s += std::norm(e);
    return s;
}

cplx trace(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("trace requires a square matrix");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.n_rows; ++i) s += a.at(i, i);
    return s;
}

double unitarity_residual(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("unitarity_residual requires a square matrix");
    ComplexMatrix p = matmul_serial(adjoint(a), a);
    for (std::size_t i = 0; i < p.n_rows; ++i) p.at(i, i) -= 1.0;
    return frobenius_norm_sq(p);
}

ComplexMatrix scale(const ComplexMatrix& a, cplx factor) {
    ComplexMatrix r = a;
    for (cplx& e : r.entries) e *= factor;
    return r;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.n_rows != b.n_rows || a.n_cols != b.n_cols) {
        throw std::invalid_argument("subtract dimension mismatch");
    }
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= b.entries[i];
    return r;
}

double relative_frobenius_error(const ComplexMatrix& a, const ComplexMatrix& b) {
    const double na = std::sqrt(frobenius_norm_sq(a));
    const double nb = std::sqrt(frobenius_norm_sq(b));
    const double denom = std::max(na, nb);
    if (denom == 0.0) return 0.0;
    return std::sqrt(frobenius_norm_sq(subtract(a, b))) / denom;
}

std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> v) {
    if (v.size() != a.n_cols) throw std::invalid_argument("matvec dimension mismatch");
    std::vector<cplx> out(a.n_rows, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.n_rows; ++i) {
        cplx acc{0.0, 0.0};
        const cplx* row = &a.entries[i * a.n_cols];
        for (std::size_t j = 0; j < a.n_cols; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace symbreak
