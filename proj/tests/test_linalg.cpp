#include <doctest.h>

#include <cmath>

#include "symbreak/errors.hpp"
#include "symbreak/fixtures.hpp"
#include "symbreak/linalg.hpp"
#include "symbreak/matrix.hpp"

using namespace symbreak;

namespace {

double solve_residual(const ComplexMatrix& a, std::span<const cplx> x, std::span<const cplx> b) {
    const std::vector<cplx> ax = matvec(a, x);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        num += std::norm(ax[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("lu solve and adjoint solve") {
    Rng rng(21);
    for (std::size_t n : {3u, 8u, 25u}) {
        const ComplexMatrix a = random_matrix(rng, n, n);
        const LuFactors f = lu_factor(n, a.entries);
        std::vector<cplx> b(n);
        for (cplx& e : b) e = rng.cgauss();

        const std::vector<cplx> x = lu_solve(f, b);
        CHECK(solve_residual(a, x, b) <= 1e-12);

        const std::vector<cplx> y = lu_solve_adjoint(f, b);
        CHECK(solve_residual(adjoint(a), y, b) <= 1e-12);
    }
}

TEST_CASE("singular matrix rejected") {
    std::vector<cplx> a(4, cplx{1.0, 0.0});  // rank 1
    CHECK_THROWS_AS((void)lu_factor(2, a), numeric_error);
}

TEST_CASE("condition estimate tracks diagonal scaling") {
    const std::size_t n = 6;
    ComplexMatrix a = ComplexMatrix::identity(n);
    a.at(0, 0) = 1e4;
    a.at(n - 1, n - 1) = 1e-4;
    const LuFactors f = lu_factor(n, a.entries);
    const double cond = condition_estimate(n, a.entries, f);
    CHECK(cond >= 1e7);
    CHECK(cond <= 1e9);

    const ComplexMatrix id = ComplexMatrix::identity(n);
    const LuFactors fid = lu_factor(n, id.entries);
    const double cid = condition_estimate(n, id.entries, fid);
    CHECK(std::abs(cid - 1.0) <= 1e-10);
}
