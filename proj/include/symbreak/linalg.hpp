#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace symbreak {

using cplx = std::complex<double>;

/// LU factorization with partial pivoting of a dense complex matrix,
/// stored packed (L unit-lower, U upper) with the row permutation.
struct LuFactors {
    std::size_t n = 0;
    std::vector<cplx> lu;    // row-major n*n
    std::vector<int> pivot;  // pivot[k] = row swapped into position k at step k
};

/// Throws numeric_error on an exactly singular pivot.
LuFactors lu_factor(std::size_t n, std::vector<cplx> a);

/// Solves A x = b given the factorization of A.
std::vector<cplx> lu_solve(const LuFactors& f, std::span<const cplx> b);

/// Solves A' x = b (conjugate transpose) given the factorization of A.
std::vector<cplx> lu_solve_adjoint(const LuFactors& f, std::span<const cplx> b);

/// 2-norm condition estimate via fixed-iteration power methods on A and
/// A^{-1} (the latter through LU solves). Deterministic start vector.
double condition_estimate(std::size_t n, std::span<const cplx> a, const LuFactors& f);

}  // namespace symbreak
