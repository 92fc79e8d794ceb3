#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "symbreak/errors.hpp"
#include "symbreak/fixtures.hpp"
#include "symbreak/grading.hpp"
#include "symbreak/io.hpp"

using namespace symbreak;

namespace {

std::filesystem::path tmp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "symbreak_io_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("format_g17 round-trips doubles") {
    for (double v : {0.3, -1.0 / 3.0, 1e-300, 6.283185307179586, 0.0}) {
        CHECK(std::stod(format_g17(v)) == v);
    }
}

TEST_CASE("operator file round trip is bit exact") {
    Rng rng(61);
    ComplexMatrix m = random_matrix(rng, 5, 3);
    m.row_labels[2].gamma = cplx{1.0 / 3.0, -0.125};
    m.row_labels[2].eta = {7, -2};
    const auto pa = tmp_dir() / "m_a.txt";
    const auto pb = tmp_dir() / "m_b.txt";
    write_matrix_file(pa.string(), m);
    const ComplexMatrix back = read_matrix_file(pa.string());
    REQUIRE(back.n_rows == m.n_rows);
    for (std::size_t i = 0; i < m.entries.size(); ++i) CHECK(back.entries[i] == m.entries[i]);
    CHECK(back.row_labels == m.row_labels);
    CHECK(back.col_labels == m.col_labels);
    write_matrix_file(pb.string(), back);
    CHECK(slurp(pa) == slurp(pb));
}

TEST_CASE("coupling table round trip, including discrete gammas") {
    CouplingTable t;
    t.kind = SymmetryKind::discrete;
    t.incoming_gammas = {cplx{1.0, 0.0}, cplx{0.0, 1.0}};
    t.outgoing_gammas = {cplx{1.0, 0.0}, cplx{0.0, 1.0}};
    t.x = {0.25, 1.0 / 3.0, 0.0, 2.0};
    t.total = 0.25 + 1.0 / 3.0 + 2.0;
    const auto p = tmp_dir() / "t.txt";
    write_coupling_file(p.string(), t);
    const CouplingTable back = read_coupling_file(p.string());
    CHECK(back.kind == SymmetryKind::discrete);
    for (std::size_t i = 0; i < t.x.size(); ++i) CHECK(back.x[i] == t.x[i]);
    CHECK(back.incoming_gammas == t.incoming_gammas);
}

TEST_CASE("scene file parsing") {
    const auto p = tmp_dir() / "scene.txt";
    spit(p, "# comment\nk = 6.283185307179586\nL = 21\nmode = full_s\n"
            "disc 0 0 1\ndisc 0 1.35 0.3\n");
    const SceneFile sf = read_scene_file(p.string());
    CHECK(sf.scene.wavenumber == 6.283185307179586);
    REQUIRE(sf.global_order.has_value());
    CHECK(*sf.global_order == 21);
    CHECK(sf.mode == OperatorMode::full_s);
    REQUIRE(sf.scene.discs.size() == 2);
    CHECK(sf.scene.discs[1].cy == 1.35);
}

TEST_CASE("scene file errors name the line") {
    const auto p = tmp_dir() / "bad_scene.txt";

    spit(p, "k = 6.28\ndisc 0 0\n");
    try {
        (void)read_scene_file(p.string());
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }

    spit(p, "k = 6.28\nwobble = 3\ndisc 0 0 1\n");
    CHECK_THROWS_AS((void)read_scene_file(p.string()), parse_error);

    spit(p, "disc 0 0 1\n");  // missing k
    CHECK_THROWS_AS((void)read_scene_file(p.string()), parse_error);

    spit(p, "k = 6.28\nk = 2\ndisc 0 0 1\n");  // duplicate key
    CHECK_THROWS_AS((void)read_scene_file(p.string()), parse_error);

    spit(p, "k = nan\ndisc 0 0 1\n");
    CHECK_THROWS_AS((void)read_scene_file(p.string()), parse_error);
}

TEST_CASE("scene file round trip") {
    SceneFile sf;
    sf.scene = scene_c3();
    sf.global_order = 23;
    sf.mode = OperatorMode::transition;
    const auto pa = tmp_dir() / "scene_a.txt";
    const auto pb = tmp_dir() / "scene_b.txt";
    write_scene_file(pa.string(), sf);
    const SceneFile back = read_scene_file(pa.string());
    CHECK(back.scene.wavenumber == sf.scene.wavenumber);
    REQUIRE(back.scene.discs.size() == sf.scene.discs.size());
    for (std::size_t i = 0; i < sf.scene.discs.size(); ++i) {
        CHECK(back.scene.discs[i].cx == sf.scene.discs[i].cx);
        CHECK(back.scene.discs[i].cy == sf.scene.discs[i].cy);
    }
    write_scene_file(pb.string(), back);
    CHECK(slurp(pa) == slurp(pb));
}

TEST_CASE("sweep csv format and round trip") {
    const std::vector<std::pair<double, double>> samples = {
        {-3.141592653589793, 0.25}, {0.0, 0.0}, {1.0 / 3.0, 1e-14}};
    const auto pa = tmp_dir() / "sweep_a.csv";
    const auto pb = tmp_dir() / "sweep_b.csv";
    write_sweep_csv(pa.string(), samples);
    const std::string text = slurp(pa);
    CHECK(text.rfind("theta,M\n", 0) == 0);
    const auto back = read_sweep_csv(pa.string());
    REQUIRE(back.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(back[i].first == samples[i].first);
        CHECK(back[i].second == samples[i].second);
    }
    write_sweep_csv(pb.string(), back);
    CHECK(slurp(pa) == slurp(pb));
}

TEST_CASE("matrix file parse errors") {
    const auto p = tmp_dir() / "bad_matrix.txt";
    spit(p, "2 2\n1 0 0 0\n0 0 1 0\nrow 0 0 0\n");  // missing labels
    CHECK_THROWS_AS((void)read_matrix_file(p.string()), parse_error);

    spit(p, "2\n");
    CHECK_THROWS_AS((void)read_matrix_file(p.string()), parse_error);

    spit(p, "2 2\n1 0 0\n0 0 1 0\n");  // short row
    CHECK_THROWS_AS((void)read_matrix_file(p.string()), parse_error);
}
