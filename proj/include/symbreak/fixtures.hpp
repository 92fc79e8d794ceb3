#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "symbreak/grading.hpp"
#include "symbreak/matrix.hpp"
#include "symbreak/scatter2d.hpp"

namespace symbreak {

/// Deterministic randomness: the mt19937_64 stream is pinned by the
/// standard and all transforms below are hand-rolled, so sequences are
/// identical across runs and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double gauss();
    cplx cgauss() { return {gauss(), gauss()}; }
    cplx unit_phase();

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Dense matrix with iid complex Gaussian entries, default labels.
ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// Haar-ish unitary via twice-orthogonalized Gram-Schmidt on a Gaussian
/// matrix; unitarity residual ~1e-28.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

/// Integer eigenvalues drawn from [lo, hi], one per basis index.
std::vector<double> random_integer_gammas(Rng& rng, std::size_t n, int lo, int hi);

/// Random nonnegative coupling table over distinct integer gamma
/// alphabets; guaranteed off-diagonal mass.
CouplingTable random_coupling_table(Rng& rng, std::size_t n_in, std::size_t n_out, int lo, int hi);

/// Random unit-modulus eigenvalues with pairwise chord separation, so
/// grouping is unambiguous.
std::vector<cplx> random_unimodular_gammas(Rng& rng, std::size_t n, double min_gap = 1e-3);

// Bundled scenes (artifact geometry, not taken from any reference data):
// big disc radius 1 at the origin, small discs radius 0.3, k = 2 pi,
// surface gap 0.05.
double fixture_wavenumber();
Scene scene_centered_disc();
Scene scene_stack(int n_small);  // small discs stacked along +y
Scene scene_c3();                // three small discs at 120 degrees

}  // namespace symbreak
