#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "symbreak/grading.hpp"
#include "symbreak/linalg.hpp"
#include "symbreak/matrix.hpp"

namespace symbreak {

struct Disc {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;
};

/// Collection of sound-soft (Dirichlet) circular discs in the plane plus
/// the wavenumber of the monochromatic scalar field.
struct Scene {
    std::vector<Disc> discs;
    double wavenumber = 0.0;

    void validate() const;  // radii > 0, no overlaps, k > 0
    double circumscribed_radius() const;
};

enum class OperatorMode { transition, full_s };

struct SimConfig {
    int global_order = 0;  // L: global basis m in {-L..L}
    int local_order = 0;   // l: per-disc multipoles
    OperatorMode mode = OperatorMode::transition;

    /// L = ceil(k R_scene) + 10, l = ceil(k a_max) + 8 (clamped to L).
    static SimConfig defaults(const Scene& scene);
    void validate() const;
};

/// Channel reflection coefficients t_m = -J_m(ka) / H1_m(ka) for a
/// sound-soft disc, indexed m + l (size 2l + 1); t_{-m} = t_m exactly.
std::vector<cplx> single_disc_tmatrix(double radius, double k, int l);

enum class TranslationKind { regular_to_regular, outgoing_to_regular };

/// Graf re-expansion of cylindrical waves about a shifted origin:
/// destination coefficient m' = sum_m C_{m-m'}(k|d|) e^{i(m-m')arg d} * source_m,
/// where d = destination origin - source origin and C is J (regular kind,
/// also valid for moving an outgoing expansion outside its sources) or H1
/// (outgoing-to-regular, |d| > 0).
ComplexMatrix graf_translation(double dx, double dy, double k, int order_src, int order_dst,
                               TranslationKind kind);

/// Multiple-scattering self-consistency: per-disc outgoing coefficients
/// b_i = T_i (a_i + sum_{j != i} translate(b_j)). Translation operators and
/// the LU factorization are built once; solves are pure and reusable.
class FoldyLaxSystem {
public:
    FoldyLaxSystem(const Scene& scene, const SimConfig& cfg);

    std::size_t n_discs() const { return n_discs_; }
    int local_order() const { return local_order_; }
    int global_order() const { return global_order_; }
    double condition_estimate() const { return condition_estimate_; }

    /// incoming: global regular coefficients, size 2L+1.
    std::vector<std::vector<cplx>> solve(std::span<const cplx> incoming) const;

    /// Translate per-disc outgoing fields back to global outgoing multipoles.
    std::vector<cplx> outgoing_global(const std::vector<std::vector<cplx>>& per_disc) const;

    /// One operator column: transition coefficients, or incoming + 2x in
    /// full_s mode.
    std::vector<cplx> scatter(std::span<const cplx> incoming) const;

private:
    std::size_t n_discs_;
    int global_order_;
    int local_order_;
    OperatorMode mode_;
    std::vector<std::vector<cplx>> tmats_;     // per disc
    std::vector<ComplexMatrix> in_translate_;  // global regular -> disc-local regular
    std::vector<ComplexMatrix> out_translate_; // disc-local outgoing -> global outgoing
    std::vector<double> scale_;                // power-of-two channel balancing
    LuFactors lu_;
    double condition_estimate_ = 0.0;
};

std::vector<std::vector<cplx>> foldy_lax_solve(const Scene& scene, const SimConfig& cfg,
                                               std::span<const cplx> incoming);

/// Dense scattering operator in the global multipole basis, one column per
/// incoming |m>; labels carry gamma = m. Columns are independent once the
/// shared factorization exists, so the parallel and serial paths agree
/// bitwise.
ComplexMatrix assemble_scattering_operator(const Scene& scene, const SimConfig& cfg);
ComplexMatrix assemble_scattering_operator_serial(const Scene& scene, const SimConfig& cfg);

/// Rotation about the origin: generator eigenvalue m on e^{im phi}.
SymmetryGrading rotation_grading(int global_order);

/// Reflection across the x axis: permutation exchanging +m and -m.
ComplexMatrix mirror_operator(int global_order);

/// The simulator as an intensity-only experiment: evaluates one incoming
/// coefficient vector per call and never materializes the operator.
BlackBoxSystem scene_black_box(const Scene& scene, const SimConfig& cfg);

/// Whole-scene transforms, for covariance checks.
Scene rotate_scene(const Scene& scene, double alpha);
Scene reflect_scene_x(const Scene& scene);

struct SceneDiagnostics {
    int global_order = 0;
    int local_order = 0;
    OperatorMode mode = OperatorMode::transition;
    double condition_estimate = 0.0;
    double unitarity_residual_full_s = 0.0;
    double convergence_delta_m = -1.0;  // max |dM| under L -> L+2; -1 if skipped
};

/// Max |M(theta) change| over a fixed 181-point grid when the global order
/// grows by 2; the mandatory truncation health check.
double convergence_delta_m(const Scene& scene, const SimConfig& cfg);

}  // namespace symbreak
