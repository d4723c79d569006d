// bench_kernels.cpp - throughput of the serial vs OpenMP field kernels
#include <chrono>
#include <cstdio>
#include <string>

#include "qedtd/simulation.hpp"

using namespace qedtd;

namespace {

double run_steps(Simulation& sim, long n) {
    const auto t0 = std::chrono::steady_clock::now();
    advance(sim, n);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool identical(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return false;
    return true;
}

void bench_case(const char* name, const Grid& g, const EmitterSpec& em, long steps) {
    const double cells = (g.dim == 1)
                             ? double(g.nx)
                             : double(g.nx) * g.ny;
    Simulation serial = make_simulation(g, em, CouplingModel::DipoleCurrent,
                                        ExecPolicy::Serial, 1 << 30);
    Simulation omp = make_simulation(g, em, CouplingModel::DipoleCurrent,
                                     ExecPolicy::OpenMP, 1 << 30);
    const double ts = run_steps(serial, steps);
    const double tp = run_steps(omp, steps);
    const bool same = (g.dim == 1)
                          ? identical(serial.stepper.fields.Ey, omp.stepper.fields.Ey)
                          : identical(serial.stepper.fields.Ez, omp.stepper.fields.Ez);
    std::printf("%-14s %8ld steps  serial %7.3f s (%6.1f Mcell/s)  openmp %7.3f s "
                "(%6.1f Mcell/s)  speedup %.2fx  bit-identical: %s\n",
                name, steps, ts, cells * steps / ts / 1e6, tp,
                cells * steps / tp / 1e6, ts / tp, same ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    const long steps_2d = (argc > 1) ? std::stol(argv[1]) : 300;
    const PhysicalConstants k;

    EmitterSpec em1 = make_default_emitter(1, k);
    BoundarySpec mur;
    mur.kind = BoundaryKind::Mur1D;
    Grid g1 = build_free_space(1, 400 * em1.lambda0, 20.0, em1.lambda0, mur, 0.9, k);
    bench_case("1d-mur", g1, em1, steps_2d * 20);

    EmitterSpec em2 = make_default_emitter(2, k);
    BoundarySpec pml;
    pml.kind = BoundaryKind::UPML2D;
    Grid g2 = build_free_space(2, 20 * em2.lambda0, 20.0, em2.lambda0, pml, 0.5, k);
    bench_case("2d-upml", g2, em2, steps_2d);

    Grid g3 = build_square_cavity_2d(std::sqrt(2.5) * em2.lambda0, 100.0, em2.lambda0,
                                     0.5, k);
    bench_case("2d-pec", g3, em2, steps_2d);
    return 0;
}
