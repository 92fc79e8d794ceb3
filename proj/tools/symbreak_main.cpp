// symbreak: quantify how strongly a 2D scattering system breaks a symmetry.
//
// Subcommands: simulate, measure, sweep, experiment, verify.
// Exit codes: 0 success, 2 input/parse error, 3 numerical failure,
// 4 verification failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symbreak/errors.hpp"
#include "symbreak/fixtures.hpp"
#include "symbreak/grading.hpp"
#include "symbreak/io.hpp"
#include "symbreak/matrix.hpp"
#include "symbreak/measures.hpp"
#include "symbreak/scatter2d.hpp"
#include "symbreak/verify.hpp"

namespace {

using namespace symbreak;
using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

struct SweepRange {
    double theta_min = -kPi;
    double theta_max = kPi;
    std::size_t samples = 721;
};

SweepRange parse_theta_range(const std::string& spec) {
    SweepRange r;
    const std::size_t c1 = spec.find(':');
    const std::size_t c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw parse_error("--theta-range expects <min:max:n>, got '" + spec + "'");
    }
    try {
        r.theta_min = std::stod(spec.substr(0, c1));
        r.theta_max = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        const long long n = std::stoll(spec.substr(c2 + 1));
        if (n < 2) throw parse_error("--theta-range needs at least 2 samples");
        r.samples = static_cast<std::size_t>(n);
    } catch (const std::exception&) {
        throw parse_error("--theta-range expects <min:max:n>, got '" + spec + "'");
    }
    if (!(r.theta_min < r.theta_max)) throw parse_error("--theta-range needs min < max");
    return r;
}

SimConfig config_for(const SceneFile& sf, const std::string& mode_flag) {
    SimConfig cfg = SimConfig::defaults(sf.scene);
    if (sf.global_order) {
        cfg.global_order = *sf.global_order;
        cfg.local_order = std::min(cfg.local_order, cfg.global_order);
    }
    cfg.mode = sf.mode;
    if (mode_flag == "transition") cfg.mode = OperatorMode::transition;
    else if (mode_flag == "full_s") cfg.mode = OperatorMode::full_s;
    else if (!mode_flag.empty()) throw parse_error("unknown --mode '" + mode_flag + "'");
    cfg.validate();
    return cfg;
}

std::string default_out(const std::string& input, const std::string& suffix) {
    return input + "." + suffix;
}

json scene_json(const Scene& scene) {
    json discs = json::array();
    for (const Disc& d : scene.discs) discs.push_back({d.cx, d.cy, d.radius});
    return json{{"k", scene.wavenumber}, {"discs", discs}};
}

int cmd_simulate(const std::string& scene_path, std::string out_path,
                 const std::string& mode_flag) {
    const SceneFile sf = read_scene_file(scene_path);
    const SimConfig cfg = config_for(sf, mode_flag);
    if (out_path.empty()) out_path = default_out(scene_path, "operator.txt");

    const ComplexMatrix s = assemble_scattering_operator(sf.scene, cfg);
    const FoldyLaxSystem sys(sf.scene, cfg);

    SimConfig full = cfg;
    full.mode = OperatorMode::full_s;
    const double residual =
        unitarity_residual(assemble_scattering_operator(sf.scene, full));
    const double delta = convergence_delta_m(sf.scene, cfg);

    write_matrix_file(out_path, s);
    json report{{"scene", scene_json(sf.scene)},
                {"global_order", cfg.global_order},
                {"local_order", cfg.local_order},
                {"mode", cfg.mode == OperatorMode::transition ? "transition" : "full_s"},
                {"condition_estimate", sys.condition_estimate()},
                {"unitarity_residual_full_s", residual},
                {"convergence_delta_m", delta}};
    const std::string report_path = out_path + ".report.json";
    {
        std::FILE* f = std::fopen(report_path.c_str(), "wb");
        if (!f) throw parse_error("cannot open '" + report_path + "' for writing");
        const std::string text = report.dump(2);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fputc('\n', f);
        std::fclose(f);
    }

    std::cout << "operator: " << out_path << "\n"
              << "report:   " << report_path << "\n"
              << "L=" << cfg.global_order << " l=" << cfg.local_order
              << " condition=" << format_g17(sys.condition_estimate())
              << " unitarity_residual(full_s)=" << format_g17(residual)
              << " convergence_delta_m=" << format_g17(delta) << "\n";
    if (delta > 1e-6) {
        throw numeric_error("truncation convergence diagnostic failed: max |dM| = " +
                            format_g17(delta));
    }
    return 0;
}

double mirror_parity(const cplx& gamma) {
    const double m = gamma.real();
    const long long mi = std::llround(m);
    if (std::abs(gamma.imag()) > 1e-9 || std::abs(m - static_cast<double>(mi)) > 1e-9) {
        throw parse_error("mirror symmetry needs integer angular-momentum labels");
    }
    return (mi % 2 == 0) ? 1.0 : -1.0;
}

ComplexMatrix mirror_from_labels(const ComplexMatrix& s) {
    if (!s.square()) throw parse_error("mirror symmetry requires a square operator");
    const std::size_t n = s.n_rows;
    ComplexMatrix p(n, n);
    p.row_labels = s.row_labels;
    p.col_labels = s.col_labels;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx want = -s.col_labels[j].gamma;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(s.row_labels[i].gamma - want) <= 1e-9) {
                p.at(i, j) = mirror_parity(s.col_labels[j].gamma);
                found = true;
                break;
            }
        }
        if (!found) {
            throw parse_error("operator labels are not closed under m -> -m; "
                              "cannot build the mirror operator");
        }
    }
    return p;
}

/// Unitary change of basis from the mirror eigenbasis (gamma = +1 even,
/// -1 odd combinations) to the m basis. Column order: for each label pair,
/// the even combination then, for m > 0, the odd one.
struct MirrorBasis {
    ComplexMatrix u;                  // m-basis <- eigenbasis
    std::vector<cplx> eigenvalues;    // +1 / -1 per eigenbasis column
};

MirrorBasis mirror_eigenbasis(const ComplexMatrix& s) {
    const std::size_t n = s.n_rows;
    MirrorBasis mb;
    mb.u = ComplexMatrix(n, n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double m = s.col_labels[j].gamma.real();
        if (m < 0.0) continue;  // handled together with +m
        std::size_t partner = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(s.col_labels[i].gamma + s.col_labels[j].gamma) <= 1e-9 && i != j) {
                partner = i;
                break;
            }
        }
        if (m == 0.0 || partner == n) {
            mb.u.at(j, col) = 1.0;
            mb.eigenvalues.emplace_back(1.0, 0.0);
            ++col;
            continue;
        }
        mb.u.at(j, col) = inv_sqrt2;
        mb.u.at(partner, col) = inv_sqrt2;
        mb.eigenvalues.emplace_back(1.0, 0.0);
        ++col;
        mb.u.at(j, col) = inv_sqrt2;
        mb.u.at(partner, col) = -inv_sqrt2;
        mb.eigenvalues.emplace_back(-1.0, 0.0);
        ++col;
    }
    if (col != n) throw parse_error("operator labels are not closed under m -> -m");
    return mb;
}

int cmd_measure(const std::string& operator_path, const std::string& symmetry, double theta,
                std::string out_path) {
    const ComplexMatrix s = read_matrix_file(operator_path);
    if (!s.square()) throw parse_error("measure requires a square operator");

    const std::string table_path =
        (out_path.empty() ? operator_path : out_path) + ".coupling.txt";

    json report;
    report["operator"] = operator_path;
    report["symmetry"] = symmetry;
    const double residual = unitarity_residual(s);
    report["operator_unitarity_residual"] = residual;

    if (symmetry == "rotation") {
        const SymmetryGrading g_in = grading_from_labels(s.col_labels, SymmetryKind::continuous);
        const SymmetryGrading g_out = grading_from_labels(s.row_labels, SymmetryKind::continuous);
        const CouplingTable t = coupling_strengths(s, g_in, g_out);
        write_coupling_file(table_path, t);

        MeasureReport mr;
        mr.total_coupling = t.total;
        mr.b_gamma = local_slope(t);
        mr.c_s_gamma = exchange_ability(t);
        mr.theta_samples = {{theta, measure_continuous_closed(t, theta)}};
        mr.diagnostics.unitarity_residual = residual;
        mr.validate();

        const double m_direct = measure_direct(
            s, build_continuous_transform(
                   grading_from_labels(s.col_labels, SymmetryKind::continuous), theta));

        std::cout << "M(theta=" << format_g17(theta) << ") = "
                  << format_g17(mr.theta_samples[0].second) << "\n"
                  << "B_Gamma = " << format_g17(mr.b_gamma) << "\n"
                  << "C_SGamma = " << format_g17(mr.c_s_gamma) << "\n"
                  << "total_coupling = " << format_g17(mr.total_coupling) << "\n"
                  << "coupling_table = " << table_path << "\n";

        report["theta"] = theta;
        report["M"] = mr.theta_samples[0].second;
        report["M_direct"] = m_direct;
        report["B_gamma"] = mr.b_gamma;
        report["C_S_gamma"] = mr.c_s_gamma;
        report["total_coupling"] = mr.total_coupling;
        report["coupling_table"] = table_path;
    } else if (symmetry == "mirror") {
        const ComplexMatrix sigma = mirror_from_labels(s);
        const double m_direct = measure_direct(s, sigma);

        const MirrorBasis mb = mirror_eigenbasis(s);
        const ComplexMatrix s_eig = matmul(matmul(adjoint(mb.u), s), mb.u);
        const SymmetryGrading g = SymmetryGrading::discrete(mb.eigenvalues);
        const CouplingTable t = coupling_strengths(s_eig, g, g);
        write_coupling_file(table_path, t);
        const double m_table = measure_discrete(t);

        std::cout << "M(mirror) = " << format_g17(m_direct) << "\n"
                  << "M(mirror, from coupling table) = " << format_g17(m_table) << "\n"
                  << "total_coupling = " << format_g17(t.total) << "\n"
                  << "coupling_table = " << table_path << "\n";

        report["M"] = m_direct;
        report["M_from_table"] = m_table;
        report["total_coupling"] = t.total;
        report["coupling_table"] = table_path;
    } else {
        throw parse_error("unknown --symmetry '" + symmetry + "' (rotation|mirror)");
    }

    if (!out_path.empty()) {
        std::FILE* f = std::fopen(out_path.c_str(), "wb");
        if (!f) throw parse_error("cannot open '" + out_path + "' for writing");
        const std::string text = report.dump(2);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fputc('\n', f);
        std::fclose(f);
    }
    return 0;
}

int cmd_sweep(const std::string& operator_path, const std::string& symmetry,
              const SweepRange& range, std::string out_path) {
    if (symmetry != "rotation") {
        throw parse_error("sweep requires a continuous symmetry (--symmetry rotation)");
    }
    const ComplexMatrix s = read_matrix_file(operator_path);
    const SymmetryGrading g_in = grading_from_labels(s.col_labels, SymmetryKind::continuous);
    const SymmetryGrading g_out = grading_from_labels(s.row_labels, SymmetryKind::continuous);
    const CouplingTable t = coupling_strengths(s, g_in, g_out);
    if (out_path.empty()) out_path = default_out(operator_path, "sweep.csv");
    write_sweep_csv(out_path, sweep_measure(t, range.theta_min, range.theta_max, range.samples));
    std::cout << "sweep: " << out_path << " (" << range.samples << " samples)\n";
    return 0;
}

int cmd_experiment(const std::string& scene_path, const std::string& symmetry,
                   std::string out_path, const std::string& mode_flag) {
    const SceneFile sf = read_scene_file(scene_path);
    const SimConfig cfg = config_for(sf, mode_flag);
    if (out_path.empty()) out_path = default_out(scene_path, "coupling.txt");

    // Intensity-only pathway: one black-box evaluation per incoming basis
    // vector; the scattering operator itself is never assembled here.
    const BlackBoxSystem box = scene_black_box(sf.scene, cfg);
    CouplingTable t;
    if (symmetry == "rotation") {
        const SymmetryGrading g = rotation_grading(cfg.global_order);
        t = coupling_from_intensities(box, g, g);
    } else if (symmetry == "mirror") {
        const int L = cfg.global_order;
        const std::size_t n = 2 * static_cast<std::size_t>(L) + 1;
        // Mirror eigenbasis: |0>, then even/odd combinations of |+-m>.
        ComplexMatrix u(n, n);
        std::vector<cplx> eigs(n);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        std::size_t col = 0;
        u.at(static_cast<std::size_t>(L), col) = 1.0;
        eigs[col++] = 1.0;
        for (int m = 1; m <= L; ++m) {
            u.at(static_cast<std::size_t>(L + m), col) = inv_sqrt2;
            u.at(static_cast<std::size_t>(L - m), col) = inv_sqrt2;
            eigs[col++] = 1.0;
            u.at(static_cast<std::size_t>(L + m), col) = inv_sqrt2;
            u.at(static_cast<std::size_t>(L - m), col) = -inv_sqrt2;
            eigs[col++] = -1.0;
        }
        BlackBoxSystem rotated;
        rotated.in_labels = default_labels(n);
        rotated.out_labels = default_labels(n);
        const ComplexMatrix u_adj = adjoint(u);
        rotated.evaluate = [&box, &u, &u_adj](std::span<const cplx> v) {
            return matvec(u_adj, box.evaluate(matvec(u, v)));
        };
        t = coupling_from_intensities(rotated, SymmetryGrading::discrete(eigs),
                                      SymmetryGrading::discrete(eigs));
    } else {
        throw parse_error("unknown --symmetry '" + symmetry + "' (rotation|mirror)");
    }
    write_coupling_file(out_path, t);
    std::cout << "coupling table: " << out_path << "\n"
              << "total_coupling = " << format_g17(t.total) << "\n";
    return 0;
}

int cmd_verify(std::uint64_t seed, const std::string& out_path) {
    const std::vector<CheckResult> results = run_verification(seed);
    std::string report;
    bool all_pass = true;
    for (const CheckResult& r : results) {
        report += (r.pass ? "PASS " : "FAIL ") + r.name + " - " + r.detail + "\n";
        std::fprintf(stderr, "%7.1f ms  %s\n", r.ms, r.name.c_str());
        all_pass = all_pass && r.pass;
    }
    report += all_pass ? "VERIFY OK\n" : "VERIFY FAILED\n";
    std::cout << report;  // timing deliberately kept off stdout: stdout is deterministic
    if (!out_path.empty()) {
        std::FILE* f = std::fopen(out_path.c_str(), "wb");
        if (!f) throw parse_error("cannot open '" + out_path + "' for writing");
        std::fwrite(report.data(), 1, report.size(), f);
        std::fclose(f);
    }
    return all_pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"observation-based symmetry breaking measures for 2D scattering systems"};
    app.require_subcommand(1);

    std::string scene_path, operator_path, out_path;
    std::string symmetry = "rotation";
    std::string mode_flag;
    std::string theta_range_spec;
    double theta = kPi;
    std::uint64_t seed = 20240614ULL;

    CLI::App* simulate = app.add_subcommand("simulate", "assemble a scene's scattering operator");
    simulate->add_option("--scene", scene_path, "scene file")->required();
    simulate->add_option("--out", out_path, "operator output path");
    simulate->add_option("--mode", mode_flag, "transition|full_s");

    CLI::App* measure = app.add_subcommand("measure", "symmetry-breaking measures of an operator");
    measure->add_option("--operator", operator_path, "operator file")->required();
    measure->add_option("--symmetry", symmetry, "rotation|mirror");
    measure->add_option("--theta", theta, "rotation angle (radians)");
    measure->add_option("--out", out_path, "machine-readable report path");

    CLI::App* sweep = app.add_subcommand("sweep", "M(theta) curve over a theta grid");
    sweep->add_option("--operator", operator_path, "operator file")->required();
    sweep->add_option("--symmetry", symmetry, "rotation");
    sweep->add_option("--theta-range", theta_range_spec, "<min:max:n>");
    sweep->add_option("--out", out_path, "CSV output path");

    CLI::App* experiment =
        app.add_subcommand("experiment", "coupling table from intensity-only measurements");
    experiment->add_option("--scene", scene_path, "scene file")->required();
    experiment->add_option("--symmetry", symmetry, "rotation|mirror");
    experiment->add_option("--out", out_path, "coupling table output path");
    experiment->add_option("--mode", mode_flag, "transition|full_s");

    CLI::App* verify = app.add_subcommand("verify", "run the built-in invariant suite");
    verify->add_option("--seed", seed, "fuzz seed");
    verify->add_option("--out", out_path, "report output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(scene_path, out_path, mode_flag);
        if (measure->parsed()) return cmd_measure(operator_path, symmetry, theta, out_path);
        if (sweep->parsed()) {
            SweepRange range;
            if (!theta_range_spec.empty()) range = parse_theta_range(theta_range_spec);
            return cmd_sweep(operator_path, symmetry, range, out_path);
        }
        if (experiment->parsed()) return cmd_experiment(scene_path, symmetry, out_path, mode_flag);
        if (verify->parsed()) return cmd_verify(seed, out_path);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
