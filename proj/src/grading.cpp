#include "symbreak/grading.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <string>

#include "symbreak/errors.hpp"

namespace symbreak {

SymmetryGrading SymmetryGrading::continuous(std::vector<double> gammas, double tol) {
    SymmetryGrading g;
    g.kind = SymmetryKind::continuous;
    g.grouping_tolerance = tol;
    g.eigenvalues.reserve(gammas.size());
    for (double v : gammas) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite grading eigenvalue");
        g.eigenvalues.emplace_back(v, 0.0);
    }
    return g;
}

SymmetryGrading SymmetryGrading::discrete(std::vector<cplx> gammas, double tol) {
    SymmetryGrading g;
    g.kind = SymmetryKind::discrete;
    g.grouping_tolerance = tol;
    for (const cplx& v : gammas) {
        if (std::abs(std::abs(v) - 1.0) > 1e-12) {
            throw std::invalid_argument(
                "discrete grading eigenvalue is not unit-modulus (unitary T required)");
        }
    }
    g.eigenvalues = std::move(gammas);
    return g;
}

namespace {

std::vector<GammaGroup> group_continuous(const SymmetryGrading& grading) {
    const std::size_t n = grading.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = grading.eigenvalues[a].real();
        const double vb = grading.eigenvalues[b].real();
        if (va != vb) return va < vb;
        return a < b;
    });

    std::vector<GammaGroup> groups;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n) {
            const double prev = grading.eigenvalues[order[end - 1]].real();
            const double cur = grading.eigenvalues[order[end]].real();
            if (cur - prev > grading.grouping_tolerance) break;
            ++end;
        }
        const double lo = grading.eigenvalues[order[start]].real();
        const double hi = grading.eigenvalues[order[end - 1]].real();
        if (hi - lo > grading.grouping_tolerance) {
            throw std::invalid_argument(
                "ambiguous eigenvalue clustering: a chain of eigenvalues bridges distinct "
                "groups through the grouping tolerance");
        }
        GammaGroup grp;
        grp.gamma = cplx{0.5 * (lo + hi), 0.0};
        for (std::size_t i = start; i < end; ++i) grp.indices.push_back(order[i]);
        std::sort(grp.indices.begin(), grp.indices.end());
        groups.push_back(std::move(grp));
        start = end;
    }
    return groups;
}

std::vector<GammaGroup> group_discrete(const SymmetryGrading& grading) {
    const std::size_t n = grading.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto phase = [&](std::size_t i) { return std::arg(grading.eigenvalues[i]); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (phase(a) != phase(b)) return phase(a) < phase(b);
        return a < b;
    });

    auto chord = [&](std::size_t a, std::size_t b) {
        return std::abs(grading.eigenvalues[a] - grading.eigenvalues[b]);
    };

    // Split points on the sorted circle, including the wrap-around gap.
    std::vector<std::size_t> splits;  // chain starts at order[splits[k]]
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        if (chord(order[prev], order[i]) > grading.grouping_tolerance) splits.push_back(i);
    }

    std::vector<GammaGroup> groups;
    if (splits.empty()) {
        // Whole circle is one chain; legal only if truly one cluster.
        double diam = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diam = std::max(diam, chord(order[0], order[i]));
        }
        if (n > 1 && diam > grading.grouping_tolerance) {
            throw std::invalid_argument(
                "ambiguous eigenvalue clustering: a chain of eigenvalues bridges distinct "
                "groups through the grouping tolerance");
        }
        GammaGroup grp;
        grp.indices = order;
        std::sort(grp.indices.begin(), grp.indices.end());
        cplx mean{0.0, 0.0};
        for (std::size_t i : grp.indices) mean += grading.eigenvalues[i];
        grp.gamma = mean / std::abs(mean);
        groups.push_back(std::move(grp));
        return groups;
    }

    for (std::size_t s = 0; s < splits.size(); ++s) {
        const std::size_t begin = splits[s];
        const std::size_t end = splits[(s + 1) % splits.size()];  // exclusive, circular
        GammaGroup grp;
        for (std::size_t i = begin; i != end; i = (i + 1) % n) grp.indices.push_back(order[i]);
        double diam = 0.0;
        for (std::size_t a : grp.indices) {
            for (std::size_t b : grp.indices) diam = std::max(diam, chord(a, b));
        }
        if (diam > grading.grouping_tolerance) {
            throw std::invalid_argument(
                "ambiguous eigenvalue clustering: a chain of eigenvalues bridges distinct "
                "groups through the grouping tolerance");
        }
        cplx mean{0.0, 0.0};
        for (std::size_t i : grp.indices) mean += grading.eigenvalues[i];
        grp.gamma = mean / std::abs(mean);
        std::sort(grp.indices.begin(), grp.indices.end());
        groups.push_back(std::move(grp));
    }
    std::sort(groups.begin(), groups.end(), [](const GammaGroup& a, const GammaGroup& b) {
        return std::arg(a.gamma) < std::arg(b.gamma);
    });
    return groups;
}

}  // namespace

std::vector<GammaGroup> group_indices(const SymmetryGrading& grading) {
    if (grading.size() == 0) throw std::invalid_argument("empty grading");
    if (grading.kind == SymmetryKind::continuous) return group_continuous(grading);
    return group_discrete(grading);
}

SymmetryGrading grading_from_labels(std::span<const BasisLabel> labels, SymmetryKind kind,
                                    double tol) {
    if (kind == SymmetryKind::continuous) {
        std::vector<double> gammas;
        gammas.reserve(labels.size());
        for (const BasisLabel& l : labels) {
            if (std::abs(l.gamma.imag()) > 1e-12) {
                throw std::invalid_argument(
                    "label gamma has an imaginary part; not a continuous-generator eigenvalue");
            }
            gammas.push_back(l.gamma.real());
        }
        return SymmetryGrading::continuous(std::move(gammas), tol);
    }
    std::vector<cplx> gammas;
    gammas.reserve(labels.size());
    for (const BasisLabel& l : labels) gammas.push_back(l.gamma);
    return SymmetryGrading::discrete(std::move(gammas), tol);
}

namespace {

std::size_t find_group(const std::vector<GammaGroup>& groups, cplx gamma, double tol,
                       const char* which) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (std::abs(groups[g].gamma - gamma) <= tol) return g;
    }
    throw std::invalid_argument(std::string("unknown ") + which + " eigenvalue: no group within " +
                                "the grouping tolerance");
}

void check_dims(const ComplexMatrix& s, const SymmetryGrading& grading_in,
                const SymmetryGrading& grading_out) {
    if (s.n_rows == 0 || s.n_cols == 0) throw std::invalid_argument("empty operator");
    if (grading_in.size() != s.n_cols || grading_out.size() != s.n_rows) {
        throw std::invalid_argument("grading sizes do not match operator dimensions");
    }
}

}  // namespace

ComplexMatrix restrict_block(const ComplexMatrix& s, const SymmetryGrading& grading_in,
                             const SymmetryGrading& grading_out, cplx gamma_in, cplx gamma_out) {
    check_dims(s, grading_in, grading_out);
    const auto groups_in = group_indices(grading_in);
    const auto groups_out = group_indices(grading_out);
    const std::size_t gi = find_group(groups_in, gamma_in, grading_in.grouping_tolerance, "incoming");
    const std::size_t go =
        find_group(groups_out, gamma_out, grading_out.grouping_tolerance, "outgoing");

    const auto& rows = groups_out[go].indices;
    const auto& cols = groups_in[gi].indices;
    ComplexMatrix block(rows.size(), cols.size());
    block.row_labels.clear();
    block.col_labels.clear();
    for (std::size_t r : rows) block.row_labels.push_back(s.row_labels[r]);
    for (std::size_t c : cols) block.col_labels.push_back(s.col_labels[c]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            block.at(i, j) = s.at(rows[i], cols[j]);
        }
    }
    return block;
}

CouplingTable coupling_strengths(const ComplexMatrix& s, const SymmetryGrading& grading_in,
                                 const SymmetryGrading& grading_out) {
    check_dims(s, grading_in, grading_out);
    const auto groups_in = group_indices(grading_in);
    const auto groups_out = group_indices(grading_out);

    CouplingTable t;
    t.kind = grading_in.kind;
    for (const auto& g : groups_in) t.incoming_gammas.push_back(g.gamma);
    for (const auto& g : groups_out) t.outgoing_gammas.push_back(g.gamma);
    t.x.assign(t.n_in() * t.n_out(), 0.0);

    for (std::size_t go = 0; go < groups_out.size(); ++go) {
        for (std::size_t gi = 0; gi < groups_in.size(); ++gi) {
            double acc = 0.0;
            for (std::size_t r : groups_out[go].indices) {
                for (std::size_t c : groups_in[gi].indices) {
                    acc += std::norm(s.at(r, c));
                }
            }
            t.at(go, gi) = acc;
        }
    }
    double total = 0.0;
    for (double v : t.x) total += v;
    t.total = total;
    return t;
}

void CouplingTable::validate() const {
    if (x.size() != n_in() * n_out()) {
        throw std::invalid_argument("coupling table size mismatch");
    }
    double sum = 0.0;
    for (double v : x) {
        if (!(v >= 0.0)) throw std::invalid_argument("negative coupling strength");
        sum += v;
    }
    if (std::abs(sum - total) > 1e-12 * std::max(1.0, std::abs(total))) {
        throw std::invalid_argument("coupling table total out of sync with entries");
    }
}

namespace {

struct IntensityPlan {
    std::vector<GammaGroup> groups_in;
    std::vector<GammaGroup> groups_out;
    std::vector<std::size_t> in_order;      // canonical order: group ascending, then eta index
    std::vector<std::size_t> in_group_of;   // canonical position -> incoming group
    std::vector<std::size_t> out_group_of;  // out basis index -> outgoing group
};

IntensityPlan make_plan(const BlackBoxSystem& sys, const SymmetryGrading& grading_in,
                        const SymmetryGrading& grading_out) {
    if (grading_in.size() != sys.in_labels.size() ||
        grading_out.size() != sys.out_labels.size()) {
        throw std::invalid_argument("grading sizes do not match black-box basis sizes");
    }
    IntensityPlan p;
    p.groups_in = group_indices(grading_in);
    p.groups_out = group_indices(grading_out);
    for (std::size_t g = 0; g < p.groups_in.size(); ++g) {
        for (std::size_t idx : p.groups_in[g].indices) {
            p.in_order.push_back(idx);
            p.in_group_of.push_back(g);
        }
    }
    p.out_group_of.assign(grading_out.size(), 0);
    for (std::size_t g = 0; g < p.groups_out.size(); ++g) {
        for (std::size_t idx : p.groups_out[g].indices) p.out_group_of[idx] = g;
    }
    return p;
}

// Per-incoming-vector outgoing intensity, split by outgoing group.
// Shared by the serial and parallel paths so both accumulate identically.
std::vector<double> intensity_row(const BlackBoxSystem& sys, const IntensityPlan& p,
                                  std::size_t basis_index) {
    std::vector<cplx> e(sys.in_labels.size(), cplx{0.0, 0.0});
    e[basis_index] = 1.0;
    const std::vector<cplx> out = sys.evaluate(e);
    if (out.size() != sys.out_labels.size()) {
        throw std::invalid_argument("black-box evaluator output dimension mismatch");
    }
    std::vector<double> row(p.groups_out.size(), 0.0);
    for (std::size_t j = 0; j < out.size(); ++j) {
        row[p.out_group_of[j]] += std::norm(out[j]);
    }
    return row;
}

CouplingTable fold_rows(const IntensityPlan& p, const std::vector<std::vector<double>>& rows,
                        SymmetryKind kind) {
    CouplingTable t;
    t.kind = kind;
    for (const auto& g : p.groups_in) t.incoming_gammas.push_back(g.gamma);
    for (const auto& g : p.groups_out) t.outgoing_gammas.push_back(g.gamma);
    t.x.assign(t.n_in() * t.n_out(), 0.0);
    for (std::size_t pos = 0; pos < p.in_order.size(); ++pos) {
        const std::size_t gi = p.in_group_of[pos];
        for (std::size_t go = 0; go < p.groups_out.size(); ++go) {
            t.at(go, gi) += rows[pos][go];
        }
    }
    double total = 0.0;
    for (double v : t.x) total += v;
    t.total = total;
    return t;
}

}  // namespace

CouplingTable coupling_from_intensities(const BlackBoxSystem& sys,
                                        const SymmetryGrading& grading_in,
                                        const SymmetryGrading& grading_out) {
    const IntensityPlan p = make_plan(sys, grading_in, grading_out);
    std::vector<std::vector<double>> rows(p.in_order.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (long long pos = 0; pos < static_cast<long long>(p.in_order.size()); ++pos) {
        try {
            rows[pos] = intensity_row(sys, p, p.in_order[pos]);
        } catch (...) {
#pragma omp critical(symbreak_intensity_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return fold_rows(p, rows, grading_in.kind);
}

CouplingTable coupling_from_intensities_serial(const BlackBoxSystem& sys,
                                               const SymmetryGrading& grading_in,
                                               const SymmetryGrading& grading_out) {
    const IntensityPlan p = make_plan(sys, grading_in, grading_out);
    std::vector<std::vector<double>> rows(p.in_order.size());
    for (std::size_t pos = 0; pos < p.in_order.size(); ++pos) {
        rows[pos] = intensity_row(sys, p, p.in_order[pos]);
    }
    return fold_rows(p, rows, grading_in.kind);
}

BlackBoxSystem matrix_black_box(const ComplexMatrix& s) {
    BlackBoxSystem sys;
    sys.in_labels = s.col_labels;
    sys.out_labels = s.row_labels;
    ComplexMatrix copy = s;
    sys.evaluate = [copy](std::span<const cplx> v) { return matvec(copy, v); };
    return sys;
}

}  // namespace symbreak
