#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symbreak/grading.hpp"
#include "symbreak/matrix.hpp"
#include "symbreak/scatter2d.hpp"

namespace symbreak {

/// 17-significant-digit decimal; round-trips doubles bit-exactly.
std::string format_g17(double v);

/// Operator file: `rows cols`, then one line of `re im` pairs per row,
/// then `row <i> <gamma_re> <gamma_im> <eta...>` and `col <j> ...` label
/// lines. UTF-8 text, bit-exact round-trip.
void write_matrix_file(const std::string& path, const ComplexMatrix& m);
ComplexMatrix read_matrix_file(const std::string& path);

/// Coupling table file: `gammas_in:` / `gammas_out:` headers with `re im`
/// pairs, then the X matrix (row = outgoing, col = incoming).
void write_coupling_file(const std::string& path, const CouplingTable& t);
CouplingTable read_coupling_file(const std::string& path);

struct SceneFile {
    Scene scene;
    std::optional<int> global_order;
    OperatorMode mode = OperatorMode::transition;
};

/// Scene file: `k = <real>`, optional `L = <int>`, optional
/// `mode = transition|full_s`, one `disc <cx> <cy> <radius>` line per
/// disc. Unknown keys rejected; errors name the offending line.
SceneFile read_scene_file(const std::string& path);
void write_scene_file(const std::string& path, const SceneFile& sf);

/// Sweep CSV: header `theta,M`, one row per sample, 17 significant digits.
void write_sweep_csv(const std::string& path, const std::vector<std::pair<double, double>>& samples);
std::vector<std::pair<double, double>> read_sweep_csv(const std::string& path);

}  // namespace symbreak
