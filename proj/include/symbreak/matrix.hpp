#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace symbreak {

using cplx = std::complex<double>;

/// Identifies one basis vector: the symmetry eigenvalue it carries plus an
/// auxiliary multi-index completing the state characterization.
struct BasisLabel {
    cplx gamma{0.0, 0.0};
    std::vector<long long> eta;

    bool operator==(const BasisLabel&) const = default;
};

/// Dense row-major complex matrix with labeled row/column bases.
/// Immutable by convention after construction; all operations below are
/// pure functions returning fresh values, so instances may be shared
/// freely between threads.
struct ComplexMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<cplx> entries;           // row-major, n_rows * n_cols
    std::vector<BasisLabel> row_labels;  // size n_rows
    std::vector<BasisLabel> col_labels;  // size n_cols

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);  // zero entries, default labels
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data,
                  std::vector<BasisLabel> rlabels, std::vector<BasisLabel> clabels);

    static ComplexMatrix identity(std::size_t n);

    cplx& at(std::size_t i, std::size_t j) { return entries[i * n_cols + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return entries[i * n_cols + j]; }

    bool square() const { return n_rows == n_cols; }

    /// Checks entry/label sizes and label uniqueness; throws std::invalid_argument.
    void validate() const;
};

/// Default labels for an anonymous basis: gamma = 0, eta = {index}.
std::vector<BasisLabel> default_labels(std::size_t n);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);

double frobenius_norm_sq(const ComplexMatrix& a);

cplx trace(const ComplexMatrix& a);

/// ||A'A - I||_F^2; requires a square matrix.
double unitarity_residual(const ComplexMatrix& a);

ComplexMatrix scale(const ComplexMatrix& a, cplx factor);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||a - b||_F / max(||a||_F, ||b||_F); 0 when both are zero.
double relative_frobenius_error(const ComplexMatrix& a, const ComplexMatrix& b);

std::vector<cplx> matvec(const ComplexMatrix& a, std::span<const cplx> v);

}  // namespace symbreak
