// field solver: propagation, boundaries, conservation, parallel identity
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qedtd/engine.hpp"
#include "qedtd/simulation.hpp"

using namespace qedtd;

namespace {

constexpr double kLambda0 = 1.5e-6;

BoundarySpec mur_spec() {
    BoundarySpec b;
    b.kind = BoundaryKind::Mur1D;
    return b;
}

BoundarySpec pml_spec(int cells = 10) {
    BoundarySpec b;
    b.kind = BoundaryKind::UPML2D;
    b.pml_cells = cells;
    return b;
}

// Right-propagating pulse on the staggered 1D mesh: E^0 = g(x), and
// H^{-1/2} = (n/eta) g(x + v dt/2) at the half nodes (H leads E by half a
// step; Hz = +Ey/(eta/n) for a +x wave).
void seed_rightward_pulse(FieldStepper& s, double center, double sigma) {
    const Grid& g = s.grid;
    const double eta = s.consts.impedance();
    const double n_medium = std::sqrt(g.eps_r[g.node(g.nx / 2)]);
    const double v = s.consts.c / n_medium;
    auto gauss = [&](double x) {
        const double u = (x - center) / sigma;
        return std::exp(-0.5 * u * u);
    };
    for (int i = 0; i <= g.nx; ++i)
        s.fields.Ey[i] = gauss(i * g.dx);
    for (int i = 0; i < g.nx; ++i)
        s.fields.Hz[i] = n_medium / eta * gauss((i + 0.5) * g.dx + v * g.dt / 2.0);
}

double peak_position(const FieldStepper& s) {
    const auto& e = s.fields.Ey;
    std::size_t best = 0;
    double best_v = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (std::abs(e[i]) > best_v) {
            best_v = std::abs(e[i]);
            best = i;
        }
    }
    // three-point parabolic refinement on |E|
    double shift = 0.0;
    if (best > 0 && best + 1 < e.size()) {
        const double ym = std::abs(e[best - 1]), y0 = std::abs(e[best]),
                     yp = std::abs(e[best + 1]);
        const double denom = ym - 2 * y0 + yp;
        if (denom < 0)
            shift = 0.5 * (ym - yp) / denom;
    }
    return (best + shift) * s.grid.dx;
}

double max_abs_e(const FieldStepper& s) {
    double m = 0.0;
    const auto& e = (s.grid.dim == 1) ? s.fields.Ey : s.fields.Ez;
    for (const cplx& v : e)
        m = std::max(m, std::abs(v));
    return m;
}

// Instantaneous EM energy restricted to the non-PML interior (2 cells of
// margin), good enough for reflection probes.
double interior_energy_2d(const FieldStepper& s, int margin) {
    const Grid& g = s.grid;
    const PhysicalConstants& k = s.consts;
    const int a = margin, bx = g.nx - margin, by = g.ny - margin;
    double u = 0.0;
    for (int j = a; j <= by; ++j)
        for (int i = a; i <= bx; ++i)
            u += 0.5 * k.eps0 * g.eps_r[g.node(i, j)] *
                 std::norm(s.fields.Ez[s.fields.ez_idx(i, j)]);
    for (int j = a; j < by; ++j)
        for (int i = a; i <= bx; ++i)
            u += 0.5 * k.mu0 * std::norm(s.fields.Hx[s.fields.hx_idx(i, j)]);
    for (int j = a; j <= by; ++j)
        for (int i = a; i < bx; ++i)
            u += 0.5 * k.mu0 * std::norm(s.fields.Hy[s.fields.hy_idx(i, j)]);
    return u * g.dx * g.dy;
}

} // namespace

TEST_CASE("null evolution: zero fields and zero source stay zero") {
    const Grid g = build_pec_cavity_1d(kLambda0 / 2, 40.0, kLambda0, 0.9);
    FieldStepper s = make_stepper(g);
    for (int i = 0; i < 100; ++i)
        s.step(cplx{});
    for (const cplx& v : s.fields.Ey)
        CHECK(v == cplx{});
    for (const cplx& v : s.fields.Hz)
        CHECK(v == cplx{});
}

TEST_CASE("1D vacuum pulse propagates at c within 1% over 10 wavelengths") {
    const Grid g = build_free_space(1, 30 * kLambda0, 20.0, kLambda0, mur_spec(), 0.9);
    FieldStepper s = make_stepper(g);
    const double x0 = 5 * kLambda0;
    seed_rightward_pulse(s, x0, kLambda0);
    const double travel = 10 * kLambda0;
    const long steps = std::lround(travel / (s.consts.c * g.dt));
    for (long i = 0; i < steps; ++i)
        s.step(cplx{});
    const double expected = x0 + s.consts.c * steps * g.dt;
    CHECK(std::abs(peak_position(s) - expected) < 0.01 * travel);
}

TEST_CASE("discrete energy is conserved in closed lossless grids") {
    SUBCASE("1D PEC cavity") {
        const Grid g = build_pec_cavity_1d(kLambda0 / 2, 40.0, kLambda0, 0.9);
        FieldStepper s = make_stepper(g);
        for (int i = 0; i <= g.nx; ++i)
            s.fields.Ey[i] = std::sin(std::numbers::pi * i / g.nx);
        std::vector<cplx> prev;
        double u0 = -1.0, worst = 0.0;
        for (int n = 0; n < 10000; ++n) {
            prev = s.fields.Ey;
            s.step(cplx{});
            const double u = discrete_em_energy(g, prev, s.fields);
            if (u0 < 0)
                u0 = u;
            worst = std::max(worst, std::abs(u - u0) / u0);
        }
        CHECK(worst < 1e-10);
    }
    SUBCASE("2D PEC square, seeded (1,1) mode") {
        const Grid g =
            build_square_cavity_2d(kLambda0 / std::sqrt(2.0), 20.0, kLambda0, 0.5);
        FieldStepper s = make_stepper(g);
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i)
                s.fields.Ez[s.fields.ez_idx(i, j)] =
                    std::sin(std::numbers::pi * i / g.nx) *
                    std::sin(std::numbers::pi * j / g.ny);
        std::vector<cplx> prev;
        double u0 = -1.0, worst = 0.0;
        for (int n = 0; n < 10000; ++n) {
            prev = s.fields.Ez;
            s.step(cplx{});
            const double u = discrete_em_energy(g, prev, s.fields);
            if (u0 < 0)
                u0 = u;
            worst = std::max(worst, std::abs(u - u0) / u0);
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("linearity: scaling the initial excitation scales the run") {
    const PhysicalConstants k;
    const EmitterSpec e = make_default_emitter(1, k);
    const Grid g = build_pec_cavity_1d(e.lambda0 / 2, 40.0, e.lambda0, 0.9, k);
    const cplx alpha{0.3, 0.4};

    Simulation a = make_simulation(g, e, CouplingModel::DipoleCurrent, ExecPolicy::Serial, 1, k);
    Simulation b = make_simulation(g, e, CouplingModel::DipoleCurrent, ExecPolicy::Serial, 1, k);
    b.dipole.P = alpha;
    b.dipole.P_prev = alpha;
    advance(a, 500);
    advance(b, 500);

    double max_scale = 0.0, max_err = 0.0;
    for (std::size_t i = 0; i < a.stepper.fields.Ey.size(); ++i) {
        const cplx want = alpha * a.stepper.fields.Ey[i];
        max_scale = std::max(max_scale, std::abs(want));
        max_err = std::max(max_err, std::abs(want - b.stepper.fields.Ey[i]));
    }
    CHECK(max_err <= 1e-12 * max_scale);
    CHECK(std::abs(alpha * a.dipole.P - b.dipole.P) <= 1e-12 * std::abs(alpha));
}

TEST_CASE("Mur: normally incident vacuum pulse reflects below 1%") {
    const Grid g = build_free_space(1, 20 * kLambda0, 20.0, kLambda0, mur_spec(), 0.9);
    FieldStepper s = make_stepper(g);
    seed_rightward_pulse(s, 10 * kLambda0, 0.5 * kLambda0);
    const double incident = max_abs_e(s);
    const long steps = std::lround(14 * kLambda0 / (s.consts.c * g.dt));
    for (long i = 0; i < steps; ++i)
        s.step(cplx{});
    CHECK(max_abs_e(s) < 0.01 * incident);
}

TEST_CASE("Mur tuned to vacuum reflects a pulse arriving in a dense medium") {
    // The absorbing pads must be vacuum: terminating an n = 3.37 medium
    // with a vacuum-tuned Mur node reflects strongly.
    Grid g;
    g.dim = 1;
    g.dx = kLambda0 / (20.0 * 3.37);
    g.nx = 600;
    g.boundary.kind = BoundaryKind::Mur1D;
    g.eps_r.assign(g.nx + 1, 3.37 * 3.37);
    g.eps_r[0] = g.eps_r[g.nx] = 1.0;
    g.pec.assign(g.nx + 1, 0);
    g.emitter_i = g.nx / 2;
    g.dt = courant_dt(g, 0.9);
    FieldStepper s = make_stepper(g);
    seed_rightward_pulse(s, g.nx / 2 * g.dx, 0.1 * kLambda0);
    const double incident = max_abs_e(s);
    const double v = s.consts.c / 3.37;
    const long steps = std::lround(0.8 * g.nx * g.dx / (v * g.dt));
    for (long i = 0; i < steps; ++i)
        s.step(cplx{});
    CHECK(max_abs_e(s) > 0.05 * incident);
}

TEST_CASE("UPML absorbs an outgoing cylindrical pulse") {
    auto run_case = [&](int pml_cells) {
        const Grid g =
            build_free_space(2, 6 * kLambda0, 15.0, kLambda0, pml_spec(pml_cells), 0.5);
        FieldStepper s = make_stepper(g);
        const double xc = g.emitter_i * g.dx, yc = g.emitter_j * g.dy;
        const double sigma = 0.6 * kLambda0;
        const double k0 = 2.0 * std::numbers::pi / kLambda0;
        for (int j = 0; j <= g.ny; ++j) {
            for (int i = 0; i <= g.nx; ++i) {
                const double x = i * g.dx - xc, y = j * g.dy - yc;
                const double r2 = x * x + y * y;
                s.fields.Ez[s.fields.ez_idx(i, j)] =
                    std::cos(k0 * x) * std::exp(-0.5 * r2 / (sigma * sigma));
            }
        }
        const int margin = g.boundary.pml_cells + 2;
        double peak = 0.0, late = 0.0;
        const int total = 700;
        for (int n = 0; n < total; ++n) {
            s.step(cplx{});
            if (n % 4 == 0) {
                const double u = interior_energy_2d(s, margin);
                peak = std::max(peak, u);
                if (n > total - 160)
                    late = std::max(late, u);
            }
        }
        return late / peak;
    };
    const double r10 = run_case(10);
    CHECK(r10 < 1e-4);
    const double r0 = run_case(0); // degenerates to PEC: energy stays
    CHECK(r0 > 0.3);
    const double r5 = run_case(5); // fewer cells reflect more
    CHECK(r5 > r10);
}

TEST_CASE("numerical dispersion: phase velocity error below 0.5% at 20 pts/lambda") {
    const Grid g = build_free_space(1, 30 * kLambda0, 20.0, kLambda0, mur_spec(), 0.9);
    FieldStepper s = make_stepper(g);
    const double w0 = 2.0 * std::numbers::pi * s.consts.c / kLambda0;
    const int src = 100;
    const long steps = std::lround(90 * kLambda0 / (s.consts.c * g.dt));
    for (long n = 0; n < steps; ++n) {
        // soft current source at a fixed node
        const double t_mid = (n + 0.5) * g.dt;
        const cplx j = 1e-4 * std::exp(cplx{0.0, -w0 * t_mid});
        s.update_h();
        s.update_e(cplx{});
        s.fields.Ey[src] -= g.dt / (s.consts.eps0) * j;
    }
    // unwrap the phase over a 10-wavelength span right of the source
    const int a = 200, b = 400;
    double phase = std::arg(s.fields.Ey[a]);
    double k_acc = 0.0;
    double prev = phase;
    for (int i = a + 1; i <= b; ++i) {
        double cur = std::arg(s.fields.Ey[i]);
        double d = cur - prev;
        while (d > std::numbers::pi)
            d -= 2 * std::numbers::pi;
        while (d < -std::numbers::pi)
            d += 2 * std::numbers::pi;
        k_acc += d;
        prev = cur;
    }
    const double k_num = k_acc / ((b - a) * g.dx);
    const double v_phase = w0 / k_num;
    CHECK(std::abs(v_phase / s.consts.c - 1.0) < 0.005);
}

TEST_CASE("serial and OpenMP kernels are bit-identical") {
    const PhysicalConstants k;
    SUBCASE("1D Mur") {
        const EmitterSpec e = make_default_emitter(1, k);
        const Grid g = build_free_space(1, 20 * e.lambda0, 20.0, e.lambda0, mur_spec(), 0.9, k);
        Simulation a = make_simulation(g, e, CouplingModel::DipoleCurrent, ExecPolicy::Serial, 1, k);
        Simulation b = make_simulation(g, e, CouplingModel::DipoleCurrent, ExecPolicy::OpenMP, 1, k);
        advance(a, 400);
        advance(b, 400);
        CHECK(a.stepper.fields.Ey == b.stepper.fields.Ey);
        CHECK(a.stepper.fields.Hz == b.stepper.fields.Hz);
        CHECK(a.dipole.P == b.dipole.P);
    }
    SUBCASE("2D UPML") {
        const EmitterSpec e = make_default_emitter(2, k);
        const Grid g = build_free_space(2, 4 * e.lambda0, 12.0, e.lambda0, pml_spec(), 0.5, k);
        Simulation a = make_simulation(g, e, CouplingModel::DipoleCurrent, ExecPolicy::Serial, 1, k);
        Simulation b = make_simulation(g, e, CouplingModel::DipoleCurrent, ExecPolicy::OpenMP, 1, k);
        advance(a, 300);
        advance(b, 300);
        CHECK(a.stepper.fields.Ez == b.stepper.fields.Ez);
        CHECK(a.stepper.fields.Hx == b.stepper.fields.Hx);
        CHECK(a.stepper.fields.Hy == b.stepper.fields.Hy);
        CHECK(a.stepper.fields.Dz == b.stepper.fields.Dz);
    }
    SUBCASE("2D PEC cavity") {
        const EmitterSpec e = make_default_emitter(2, k);
        const Grid g = build_square_cavity_2d(e.lambda0 / std::sqrt(2.0), 20.0,
                                              e.lambda0, 0.5, k);
        Simulation a = make_simulation(g, e, CouplingModel::DipoleCurrent, ExecPolicy::Serial, 1, k);
        Simulation b = make_simulation(g, e, CouplingModel::DipoleCurrent, ExecPolicy::OpenMP, 1, k);
        advance(a, 300);
        advance(b, 300);
        CHECK(a.stepper.fields.Ez == b.stepper.fields.Ez);
    }
}

TEST_CASE("non-finite fields abort with the step number") {
    const Grid g = build_pec_cavity_1d(kLambda0 / 2, 40.0, kLambda0, 0.9);
    FieldStepper s = make_stepper(g);
    s.fields.Ey[5] = cplx{std::nan(""), 0.0};
    CHECK_THROWS_AS(s.check_finite(), NumericalError);
    try {
        s.check_finite();
    } catch (const NumericalError& err) {
        CHECK(std::string(err.what()).find("step") != std::string::npos);
    }
}
