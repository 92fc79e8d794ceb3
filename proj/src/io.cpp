#include "symbreak/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "symbreak/errors.hpp"

namespace symbreak {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw parse_error(path + ":" + std::to_string(line_no) + ": " + what);
}

double parse_number(const std::string& token, const std::string& path, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE ||
        !std::isfinite(v)) {
        fail(path, line_no, "expected a finite number, got '" + token + "'");
    }
    return v;
}

long long parse_integer(const std::string& token, const std::string& path, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(token.c_str(), &end, 10);
    if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE) {
        fail(path, line_no, "expected an integer, got '" + token + "'");
    }
    return v;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) tokens.push_back(tok);
    return tokens;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: byte-identical across platforms
    if (!out) throw parse_error("cannot open '" + path + "' for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "' for reading");
    return in;
}

void write_label_line(std::ofstream& out, const char* tag, std::size_t index,
                      const BasisLabel& label) {
    out << tag << ' ' << index << ' ' << format_g17(label.gamma.real()) << ' '
        << format_g17(label.gamma.imag());
    for (long long e : label.eta) out << ' ' << e;
    out << '\n';
}

}  // namespace

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out = open_out(path);
    out << m.n_rows << ' ' << m.n_cols << '\n';
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        for (std::size_t j = 0; j < m.n_cols; ++j) {
            if (j) out << ' ';
            const cplx& e = m.at(i, j);
            out << format_g17(e.real()) << ' ' << format_g17(e.imag());
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < m.n_rows; ++i) write_label_line(out, "row", i, m.row_labels[i]);
    for (std::size_t j = 0; j < m.n_cols; ++j) write_label_line(out, "col", j, m.col_labels[j]);
    if (!out) throw parse_error("write failed for '" + path + "'");
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() {
        if (!std::getline(in, line)) fail(path, line_no + 1, "unexpected end of file");
        ++line_no;
    };

    next_line();
    {
        const auto tokens = split_ws(line);
        if (tokens.size() != 2) fail(path, line_no, "expected 'rows cols'");
        const long long r = parse_integer(tokens[0], path, line_no);
        const long long c = parse_integer(tokens[1], path, line_no);
        if (r < 1 || c < 1 || r > 100000 || c > 100000) fail(path, line_no, "bad dimensions");
        ComplexMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        for (std::size_t i = 0; i < m.n_rows; ++i) {
            next_line();
            const auto row = split_ws(line);
            if (row.size() != 2 * m.n_cols) {
                fail(path, line_no, "expected " + std::to_string(2 * m.n_cols) +
                                        " numbers (re im pairs)");
            }
            for (std::size_t j = 0; j < m.n_cols; ++j) {
                m.at(i, j) = cplx{parse_number(row[2 * j], path, line_no),
                                  parse_number(row[2 * j + 1], path, line_no)};
            }
        }
        std::size_t row_labels_seen = 0, col_labels_seen = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            const auto tokens = split_ws(line);
            if (tokens.size() < 4 || (tokens[0] != "row" && tokens[0] != "col")) {
                fail(path, line_no, "expected 'row <i> gamma_re gamma_im eta...' label line");
            }
            const bool is_row = tokens[0] == "row";
            const long long idx = parse_integer(tokens[1], path, line_no);
            const std::size_t limit = is_row ? m.n_rows : m.n_cols;
            if (idx < 0 || static_cast<std::size_t>(idx) >= limit) {
                fail(path, line_no, "label index out of range");
            }
            BasisLabel label;
            label.gamma = cplx{parse_number(tokens[2], path, line_no),
                               parse_number(tokens[3], path, line_no)};
            for (std::size_t t = 4; t < tokens.size(); ++t) {
                label.eta.push_back(parse_integer(tokens[t], path, line_no));
            }
            if (is_row) {
                m.row_labels[static_cast<std::size_t>(idx)] = label;
                ++row_labels_seen;
            } else {
                m.col_labels[static_cast<std::size_t>(idx)] = label;
                ++col_labels_seen;
            }
        }
        if (row_labels_seen != m.n_rows || col_labels_seen != m.n_cols) {
            fail(path, line_no, "incomplete label block");
        }
        m.validate();
        return m;
    }
}

void write_coupling_file(const std::string& path, const CouplingTable& t) {
    std::ofstream out = open_out(path);
    out << "gammas_in:";
    for (const cplx& g : t.incoming_gammas) {
        out << ' ' << format_g17(g.real()) << ' ' << format_g17(g.imag());
    }
    out << '\n' << "gammas_out:";
    for (const cplx& g : t.outgoing_gammas) {
        out << ' ' << format_g17(g.real()) << ' ' << format_g17(g.imag());
    }
    out << '\n';
    for (std::size_t o = 0; o < t.n_out(); ++o) {
        for (std::size_t i = 0; i < t.n_in(); ++i) {
            if (i) out << ' ';
            out << format_g17(t.at(o, i));
        }
        out << '\n';
    }
    if (!out) throw parse_error("write failed for '" + path + "'");
}

CouplingTable read_coupling_file(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t line_no = 0;

    auto read_gammas = [&](const char* key) {
        if (!std::getline(in, line)) fail(path, line_no + 1, "unexpected end of file");
        ++line_no;
        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0] != key) {
            fail(path, line_no, std::string("expected '") + key + "' header");
        }
        if ((tokens.size() - 1) % 2 != 0) fail(path, line_no, "expected re im pairs");
        std::vector<cplx> gammas;
        for (std::size_t t = 1; t < tokens.size(); t += 2) {
            gammas.emplace_back(parse_number(tokens[t], path, line_no),
                                parse_number(tokens[t + 1], path, line_no));
        }
        if (gammas.empty()) fail(path, line_no, "empty gamma list");
        return gammas;
    };

    CouplingTable t;
    t.incoming_gammas = read_gammas("gammas_in:");
    t.outgoing_gammas = read_gammas("gammas_out:");
    t.x.reserve(t.n_in() * t.n_out());
    for (std::size_t o = 0; o < t.n_out(); ++o) {
        if (!std::getline(in, line)) fail(path, line_no + 1, "unexpected end of file");
        ++line_no;
        const auto tokens = split_ws(line);
        if (tokens.size() != t.n_in()) {
            fail(path, line_no, "expected " + std::to_string(t.n_in()) + " coupling values");
        }
        for (const std::string& tok : tokens) {
            const double v = parse_number(tok, path, line_no);
            if (v < 0.0) fail(path, line_no, "negative coupling strength");
            t.x.push_back(v);
        }
    }
    double total = 0.0;
    for (double v : t.x) total += v;
    t.total = total;

    bool all_real = true;
    for (const cplx& g : t.incoming_gammas) all_real = all_real && g.imag() == 0.0;
    for (const cplx& g : t.outgoing_gammas) all_real = all_real && g.imag() == 0.0;
    t.kind = all_real ? SymmetryKind::continuous : SymmetryKind::discrete;
    return t;
}

SceneFile read_scene_file(const std::string& path) {
    std::ifstream in = open_in(path);
    SceneFile sf;
    bool have_k = false, have_l = false, have_mode = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "disc") {
            if (tokens.size() != 4) fail(path, line_no, "expected 'disc <cx> <cy> <radius>'");
            Disc d;
            d.cx = parse_number(tokens[1], path, line_no);
            d.cy = parse_number(tokens[2], path, line_no);
            d.radius = parse_number(tokens[3], path, line_no);
            if (!(d.radius > 0.0)) fail(path, line_no, "disc radius must be positive");
            sf.scene.discs.push_back(d);
        } else if (tokens[0] == "k") {
            if (tokens.size() != 3 || tokens[1] != "=") fail(path, line_no, "expected 'k = <real>'");
            if (have_k) fail(path, line_no, "duplicate key 'k'");
            sf.scene.wavenumber = parse_number(tokens[2], path, line_no);
            if (!(sf.scene.wavenumber > 0.0)) fail(path, line_no, "k must be positive");
            have_k = true;
        } else if (tokens[0] == "L") {
            if (tokens.size() != 3 || tokens[1] != "=") fail(path, line_no, "expected 'L = <int>'");
            if (have_l) fail(path, line_no, "duplicate key 'L'");
            const long long L = parse_integer(tokens[2], path, line_no);
            if (L < 1 || L > 1000) fail(path, line_no, "L out of range");
            sf.global_order = static_cast<int>(L);
            have_l = true;
        } else if (tokens[0] == "mode") {
            if (tokens.size() != 3 || tokens[1] != "=") {
                fail(path, line_no, "expected 'mode = transition|full_s'");
            }
            if (have_mode) fail(path, line_no, "duplicate key 'mode'");
            if (tokens[2] == "transition") sf.mode = OperatorMode::transition;
            else if (tokens[2] == "full_s") sf.mode = OperatorMode::full_s;
            else fail(path, line_no, "unknown mode '" + tokens[2] + "'");
            have_mode = true;
        } else {
            fail(path, line_no, "unknown key '" + tokens[0] + "'");
        }
    }
    if (!have_k) throw parse_error(path + ": missing required key 'k'");
    if (sf.scene.discs.empty()) throw parse_error(path + ": scene needs at least one disc");
    try {
        sf.scene.validate();
    } catch (const std::invalid_argument& e) {
        throw parse_error(path + ": " + e.what());
    }
    return sf;
}

void write_scene_file(const std::string& path, const SceneFile& sf) {
    std::ofstream out = open_out(path);
    out << "k = " << format_g17(sf.scene.wavenumber) << '\n';
    if (sf.global_order) out << "L = " << *sf.global_order << '\n';
    out << "mode = " << (sf.mode == OperatorMode::transition ? "transition" : "full_s") << '\n';
    for (const Disc& d : sf.scene.discs) {
        out << "disc " << format_g17(d.cx) << ' ' << format_g17(d.cy) << ' '
            << format_g17(d.radius) << '\n';
    }
    if (!out) throw parse_error("write failed for '" + path + "'");
}

void write_sweep_csv(const std::string& path,
                     const std::vector<std::pair<double, double>>& samples) {
    std::ofstream out = open_out(path);
    out << "theta,M\n";
    for (const auto& [theta, m] : samples) {
        out << format_g17(theta) << ',' << format_g17(m) << '\n';
    }
    if (!out) throw parse_error("write failed for '" + path + "'");
}

std::vector<std::pair<double, double>> read_sweep_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) fail(path, 1, "empty file");
    ++line_no;
    if (line != "theta,M") fail(path, 1, "expected header 'theta,M'");
    std::vector<std::pair<double, double>> samples;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) fail(path, line_no, "expected 'theta,M' row");
        samples.emplace_back(parse_number(line.substr(0, comma), path, line_no),
                             parse_number(line.substr(comma + 1), path, line_no));
    }
    return samples;
}

}  // namespace symbreak
