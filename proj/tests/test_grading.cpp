#include <doctest.h>

#include <cmath>

#include "symbreak/errors.hpp"
#include "symbreak/fixtures.hpp"
#include "symbreak/grading.hpp"

using namespace symbreak;

TEST_CASE("group_indices partitions by eigenvalue") {
    const SymmetryGrading g = SymmetryGrading::continuous({-1.0, 0.0, 0.0, 1.0});
    const auto groups = group_indices(g);
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].gamma == cplx{-1.0, 0.0});
    CHECK(groups[0].indices == std::vector<std::size_t>{0});
    CHECK(groups[1].gamma == cplx{0.0, 0.0});
    CHECK(groups[1].indices == std::vector<std::size_t>{1, 2});
    CHECK(groups[2].indices == std::vector<std::size_t>{3});
}

TEST_CASE("all-equal eigenvalues form a single group") {
    const auto groups = group_indices(SymmetryGrading::continuous({2.0, 2.0, 2.0}));
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].indices.size() == 3);
}

TEST_CASE("cylindrical alphabet groups are exact singletons") {
    const int L = 5;
    std::vector<double> gammas;
    for (int m = -L; m <= L; ++m) gammas.push_back(m);
    const auto groups = group_indices(SymmetryGrading::continuous(gammas));
    REQUIRE(groups.size() == 2 * L + 1);
    for (int m = -L; m <= L; ++m) {
        CHECK(groups[m + L].gamma == cplx{static_cast<double>(m), 0.0});
        CHECK(groups[m + L].indices.size() == 1);
    }
}

TEST_CASE("chained eigenvalues bridging groups are rejected") {
    SymmetryGrading g = SymmetryGrading::continuous({0.0, 0.9e-9, 1.8e-9}, 1e-9);
    CHECK_THROWS_AS((void)group_indices(g), std::invalid_argument);
}

TEST_CASE("discrete grading requires unit modulus and groups by phase") {
    CHECK_THROWS_AS(SymmetryGrading::discrete({cplx{0.5, 0.0}}), std::invalid_argument);
    const SymmetryGrading g =
        SymmetryGrading::discrete({cplx{0.0, -1.0}, cplx{1.0, 0.0}, cplx{0.0, 1.0}, cplx{1.0, 0.0}});
    const auto groups = group_indices(g);
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].gamma == cplx{0.0, -1.0});
    CHECK(groups[1].indices == std::vector<std::size_t>{1, 3});
}

TEST_CASE("restrict_block shapes and completeness") {
    const SymmetryGrading g = SymmetryGrading::continuous({-1.0, -1.0, 1.0});
    ComplexMatrix s = ComplexMatrix::identity(3);

    const ComplexMatrix diag = restrict_block(s, g, g, cplx{-1.0, 0.0}, cplx{-1.0, 0.0});
    CHECK(diag.n_rows == 2);
    CHECK(relative_frobenius_error(diag, ComplexMatrix::identity(2)) == 0.0);

    const ComplexMatrix off = restrict_block(s, g, g, cplx{-1.0, 0.0}, cplx{1.0, 0.0});
    CHECK(off.n_rows == 1);
    CHECK(off.n_cols == 2);
    CHECK(frobenius_norm_sq(off) == 0.0);

    CHECK_THROWS_AS((void)restrict_block(s, g, g, cplx{5.0, 0.0}, cplx{1.0, 0.0}),
                    std::invalid_argument);

    // Reassembling every block recovers the full Frobenius weight.
    Rng rng(31);
    const ComplexMatrix r = random_matrix(rng, 3, 3);
    double reassembled = 0.0;
    for (double gi : {-1.0, 1.0}) {
        for (double go : {-1.0, 1.0}) {
            reassembled += frobenius_norm_sq(restrict_block(r, g, g, cplx{gi, 0.0}, cplx{go, 0.0}));
        }
    }
    CHECK(std::abs(reassembled - frobenius_norm_sq(r)) <= 1e-12 * frobenius_norm_sq(r));
}

TEST_CASE("coupling_strengths on identity and swap") {
    const SymmetryGrading g = SymmetryGrading::continuous({-1.0, 1.0});
    const CouplingTable ti = coupling_strengths(ComplexMatrix::identity(2), g, g);
    CHECK(ti.at(0, 0) == 1.0);
    CHECK(ti.at(1, 1) == 1.0);
    CHECK(ti.at(0, 1) == 0.0);
    CHECK(ti.at(1, 0) == 0.0);

    ComplexMatrix swap(2, 2);
    swap.at(0, 1) = 1.0;
    swap.at(1, 0) = 1.0;
    const CouplingTable ts = coupling_strengths(swap, g, g);
    CHECK(ts.at(0, 1) == 1.0);
    CHECK(ts.at(1, 0) == 1.0);
    CHECK(ts.at(0, 0) == 0.0);
    CHECK(ts.at(1, 1) == 0.0);
    ts.validate();
}

TEST_CASE("sum rule over random gradings") {
    Rng rng(32);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(3, 12));
        const ComplexMatrix s = random_matrix(rng, n, n);
        const auto g_in = SymmetryGrading::continuous(random_integer_gammas(rng, n, -2, 2));
        const auto g_out = SymmetryGrading::continuous(random_integer_gammas(rng, n, -2, 2));
        const CouplingTable t = coupling_strengths(s, g_in, g_out);
        const double want = frobenius_norm_sq(s);
        CHECK(std::abs(t.total - want) <= 1e-12 * want);
    }
}

TEST_CASE("intensity pathway: stub systems") {
    // Identity map: diagonal X equals the group dimensions.
    const SymmetryGrading g = SymmetryGrading::continuous({-1.0, 0.0, 0.0, 1.0});
    const CouplingTable ti =
        coupling_from_intensities(matrix_black_box(ComplexMatrix::identity(4)), g, g);
    CHECK(ti.at(0, 0) == 1.0);
    CHECK(ti.at(1, 1) == 2.0);
    CHECK(ti.at(2, 2) == 1.0);
    CHECK(ti.total == 4.0);

    // Fixed permutation swapping the outer groups moves the intensity.
    ComplexMatrix perm(4, 4);
    perm.at(3, 0) = 1.0;
    perm.at(1, 1) = 1.0;
    perm.at(2, 2) = 1.0;
    perm.at(0, 3) = 1.0;
    const CouplingTable tp = coupling_from_intensities(matrix_black_box(perm), g, g);
    CHECK(tp.at(2, 0) == 1.0);
    CHECK(tp.at(0, 2) == 1.0);
    CHECK(tp.at(1, 1) == 2.0);
    CHECK(tp.at(0, 0) == 0.0);
}

TEST_CASE("intensity pathway equals operator pathway and never reads phases") {
    Rng rng(33);
    const std::size_t n = 9;
    const ComplexMatrix s = random_matrix(rng, n, n);
    const auto g_in = SymmetryGrading::continuous(random_integer_gammas(rng, n, -2, 2));
    const auto g_out = SymmetryGrading::continuous(random_integer_gammas(rng, n, -2, 2));
    const CouplingTable a = coupling_strengths(s, g_in, g_out);

    // Scramble every output phase: the intensity table must not change.
    ComplexMatrix scrambled = s;
    Rng prng(34);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx phase = prng.unit_phase();
        for (std::size_t j = 0; j < n; ++j) scrambled.at(i, j) *= phase;
    }
    const CouplingTable b = coupling_from_intensities(matrix_black_box(scrambled), g_in, g_out);
    for (std::size_t k = 0; k < a.x.size(); ++k) {
        CHECK(std::abs(a.x[k] - b.x[k]) <= 1e-12 * std::max(1.0, a.x[k]));
    }
}

TEST_CASE("black box output dimension mismatch reported") {
    BlackBoxSystem sys;
    sys.in_labels = default_labels(3);
    sys.out_labels = default_labels(3);
    sys.evaluate = [](std::span<const cplx>) { return std::vector<cplx>(2); };
    const SymmetryGrading g = SymmetryGrading::continuous({0.0, 0.0, 1.0});
    CHECK_THROWS_AS((void)coupling_from_intensities_serial(sys, g, g), std::invalid_argument);
    CHECK_THROWS_AS((void)coupling_from_intensities(sys, g, g), std::invalid_argument);
}
