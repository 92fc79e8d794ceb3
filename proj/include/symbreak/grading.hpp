#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "symbreak/matrix.hpp"

namespace symbreak {

enum class SymmetryKind { continuous, discrete };

/// Assignment of a symmetry eigenvalue to each basis index: real gamma for
/// a continuous generator, unit-modulus complex gamma for a discrete
/// symmetry operator.
struct SymmetryGrading {
    SymmetryKind kind = SymmetryKind::continuous;
    std::vector<cplx> eigenvalues;
    double grouping_tolerance = 1e-9;

    static SymmetryGrading continuous(std::vector<double> gammas, double tol = 1e-9);
    static SymmetryGrading discrete(std::vector<cplx> gammas, double tol = 1e-9);

    std::size_t size() const { return eigenvalues.size(); }
};

/// Gamma-subspace: the representative eigenvalue and the (ascending) basis
/// indices it owns.
struct GammaGroup {
    cplx gamma;
    std::vector<std::size_t> indices;
};

/// Partition of the basis into gamma-subspaces. Groups are sorted by
/// eigenvalue (ascending real part for continuous gradings, ascending
/// phase for discrete ones). Throws on ambiguous clustering: chains of
/// eigenvalues that bridge distinct groups through the tolerance.
std::vector<GammaGroup> group_indices(const SymmetryGrading& grading);

/// Grading read off basis labels (gamma per index).
SymmetryGrading grading_from_labels(std::span<const BasisLabel> labels, SymmetryKind kind,
                                    double tol = 1e-9);

/// Submatrix of s with rows in the gamma_out group and columns in the
/// gamma_in group; labels preserved. Throws on unknown eigenvalues.
ComplexMatrix restrict_block(const ComplexMatrix& s, const SymmetryGrading& grading_in,
                             const SymmetryGrading& grading_out, cplx gamma_in, cplx gamma_out);

/// The system-mediated coupling strengths X indexed by (outgoing group,
/// incoming group), with the grand total.
struct CouplingTable {
    SymmetryKind kind = SymmetryKind::continuous;
    std::vector<cplx> incoming_gammas;
    std::vector<cplx> outgoing_gammas;
    std::vector<double> x;  // row-major: outgoing major, incoming minor
    double total = 0.0;

    double& at(std::size_t out, std::size_t in) { return x[out * incoming_gammas.size() + in]; }
    const double& at(std::size_t out, std::size_t in) const {
        return x[out * incoming_gammas.size() + in];
    }
    std::size_t n_in() const { return incoming_gammas.size(); }
    std::size_t n_out() const { return outgoing_gammas.size(); }

    void validate() const;
};

/// X from the operator: squared Frobenius norm of each block of s.
CouplingTable coupling_strengths(const ComplexMatrix& s, const SymmetryGrading& grading_in,
                                 const SymmetryGrading& grading_out);

/// A system observable only through its action on incoming states: maps an
/// incoming coefficient vector to the outgoing coefficient vector.
/// The evaluator must be deterministic (same input, identical output).
struct BlackBoxSystem {
    std::function<std::vector<cplx>(std::span<const cplx>)> evaluate;
    std::vector<BasisLabel> in_labels;
    std::vector<BasisLabel> out_labels;
};

/// X from intensity measurements alone: feed each incoming basis vector
/// through the system and accumulate squared moduli of the outgoing
/// coordinates. Never reads phases. Evaluations may run concurrently; the
/// per-cell accumulation happens in the fixed canonical order (incoming
/// group ascending, then eta index), so results are bit-reproducible.
CouplingTable coupling_from_intensities(const BlackBoxSystem& sys,
                                        const SymmetryGrading& grading_in,
                                        const SymmetryGrading& grading_out);
CouplingTable coupling_from_intensities_serial(const BlackBoxSystem& sys,
                                               const SymmetryGrading& grading_in,
                                               const SymmetryGrading& grading_out);

/// Black box wrapper over an explicit operator (matrix-vector product).
BlackBoxSystem matrix_black_box(const ComplexMatrix& s);

}  // namespace symbreak
