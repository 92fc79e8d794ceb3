// Benchmark: OpenMP kernels against their serial references. Each pair is
// verified bitwise-identical before timing is reported.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "symbreak/fixtures.hpp"
#include "symbreak/grading.hpp"
#include "symbreak/matrix.hpp"
#include "symbreak/measures.hpp"
#include "symbreak/scatter2d.hpp"

using namespace symbreak;

namespace {

constexpr double kPi = 3.14159265358979323846;

double time_ms(const std::function<void()>& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        if (ms < best) best = ms;
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "results identical" : "RESULTS DIFFER");
}

bool same(const ComplexMatrix& a, const ComplexMatrix& b) {
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i] != b.entries[i]) return false;
    }
    return true;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel paths run serially\n\n");
#endif

    {
        Rng rng(1);
        const std::size_t n = 384;
        const ComplexMatrix a = random_matrix(rng, n, n);
        const ComplexMatrix b = random_matrix(rng, n, n);
        const ComplexMatrix ref = matmul_serial(a, b);
        const ComplexMatrix par = matmul(a, b);
        report("matmul 384x384",
               time_ms([&] { (void)matmul_serial(a, b); }, 3),
               time_ms([&] { (void)matmul(a, b); }, 3), same(ref, par));
    }

    {
        const Scene scene = scene_stack(3);
        const SimConfig cfg = SimConfig::defaults(scene);
        const ComplexMatrix ref = assemble_scattering_operator_serial(scene, cfg);
        const ComplexMatrix par = assemble_scattering_operator(scene, cfg);
        report("operator assembly (stack3)",
               time_ms([&] { (void)assemble_scattering_operator_serial(scene, cfg); }, 3),
               time_ms([&] { (void)assemble_scattering_operator(scene, cfg); }, 3),
               same(ref, par));
    }

    {
        const Scene scene = scene_c3();
        const SimConfig cfg = SimConfig::defaults(scene);
        const SymmetryGrading g = rotation_grading(cfg.global_order);
        const CouplingTable t =
            coupling_strengths(assemble_scattering_operator(scene, cfg), g, g);
        const auto ref = sweep_measure_serial(t, -kPi, kPi, 200001);
        const auto par = sweep_measure(t, -kPi, kPi, 200001);
        bool identical = ref.size() == par.size();
        for (std::size_t i = 0; identical && i < ref.size(); ++i) identical = ref[i] == par[i];
        report("sweep 200001 angles",
               time_ms([&] { (void)sweep_measure_serial(t, -kPi, kPi, 200001); }, 3),
               time_ms([&] { (void)sweep_measure(t, -kPi, kPi, 200001); }, 3), identical);
    }

    {
        Rng rng(2);
        const std::size_t n = 192;
        const ComplexMatrix s = random_matrix(rng, n, n);
        const SymmetryGrading g =
            SymmetryGrading::continuous(random_integer_gammas(rng, n, -3, 3));
        const BlackBoxSystem box = matrix_black_box(s);
        const CouplingTable ref = coupling_from_intensities_serial(box, g, g);
        const CouplingTable par = coupling_from_intensities(box, g, g);
        bool identical = ref.x.size() == par.x.size();
        for (std::size_t i = 0; identical && i < ref.x.size(); ++i) identical = ref.x[i] == par.x[i];
        report("intensity experiment n=192",
               time_ms([&] { (void)coupling_from_intensities_serial(box, g, g); }, 3),
               time_ms([&] { (void)coupling_from_intensities(box, g, g); }, 3), identical);
    }

    return 0;
}
