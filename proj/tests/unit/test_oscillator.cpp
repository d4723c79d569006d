// oscillator updates and source current
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qedtd/grid.hpp"
#include "qedtd/oscillator.hpp"
#include "qedtd/simulation.hpp"

using namespace qedtd;

TEST_CASE("free oscillator: |P| conserved, phase -w0 t") {
    const PhysicalConstants k;
    const EmitterSpec e = make_default_emitter(1, k);
    const double dt = 2.2515576425875264e-16;
    const OscillatorParams p = make_oscillator_params(CouplingModel::DipoleCurrent, e, dt, k);

    DipoleState s;
    const long n = 10000;
    for (long i = 0; i < n; ++i)
        update_oscillator_p(s, cplx{}, p);
    CHECK(std::abs(std::abs(s.P) - 1.0) < 1e-10); // < 1e-12 per step
    const cplx expected = std::polar(1.0, -e.omega0 * n * dt);
    CHECK(std::abs(s.P - expected) < 1e-8);
}

TEST_CASE("decoupled emitter: d_eg = 0 leaves fields at zero") {
    const PhysicalConstants k;
    EmitterSpec e = make_default_emitter(1, k);
    e.d_eg = 0.0;
    const Grid g = build_pec_cavity_1d(e.lambda0 / 2, 40.0, e.lambda0, 0.9, k);
    Simulation sim = make_simulation(g, e, CouplingModel::DipoleCurrent,
                                     ExecPolicy::Serial, 1, k);
    advance(sim, 200);
    for (const cplx& v : sim.stepper.fields.Ey)
        CHECK(v == cplx{});
    CHECK(std::abs(std::abs(sim.dipole.P) - 1.0) < 1e-12);
}

TEST_CASE("integral-source oscillator: free integral matches the analytic form") {
    const PhysicalConstants k;
    const EmitterSpec e = make_default_emitter(1, k);
    const double dt = 2.0 * std::numbers::pi / e.omega0 / 128.0; // w0 dt ~ 0.05
    const OscillatorParams p =
        make_oscillator_params(CouplingModel::IntegralSource, e, dt, k);

    DipoleState s;
    s.model = CouplingModel::IntegralSource;
    const long n = 4000;
    for (long i = 0; i < n; ++i)
        update_oscillator_f(s, cplx{}, p);
    CHECK(std::abs(std::abs(s.f) - 1.0) < 1e-10);
    const double t = n * dt;
    const cplx iw0{0.0, e.omega0};
    const cplx exact = (std::exp(cplx{0.0, -e.omega0 * t}) - 1.0) / (-iw0);
    // trapezoid quadrature error ~ (w0 dt)^2 / 12
    CHECK(std::abs(s.I - exact) < 1e-3 * std::abs(exact));
}

TEST_CASE("injected current: cell-averaged delta factors") {
    const PhysicalConstants k;
    EmitterSpec e = make_default_emitter(1, k);
    BoundarySpec mur;
    mur.kind = BoundaryKind::Mur1D;
    const Grid g = build_free_space(1, 20 * e.lambda0, 20.0, e.lambda0, mur, 0.9, k);
    const double n_d = normalization_factor(e);

    DipoleState s; // P == P_prev: constant in time
    CHECK(injected_current(s, g, n_d) == cplx{});

    s.P = cplx{0.0, 1.0};
    s.P_prev = cplx{1.0, 0.0};
    const cplx dp_dt = (s.P - s.P_prev) / g.dt;
    const cplx j = injected_current(s, g, n_d);
    CHECK(std::abs(j - n_d * (1.0 / g.dx) * dp_dt) <= 1e-12 * std::abs(j));
    // delta factor: 1/dx = 1/75 nm, N_1 = 1/A
    CHECK(std::abs(j) == doctest::Approx(4.62083634919919e16 / 75e-9 *
                                         std::abs(dp_dt)).epsilon(1e-9));

    // doubling dx halves the delta factor
    const Grid g2 = build_free_space(1, 20 * e.lambda0, 10.0, e.lambda0, mur, 0.9, k);
    CHECK(g2.dx == doctest::Approx(2 * g.dx));
    CHECK(std::abs(injected_current(s, g2, n_d) * g2.dt / g.dt) ==
          doctest::Approx(std::abs(j) / 2).epsilon(1e-9));
}

TEST_CASE("record keeps the initial condition and decimation is caller-side") {
    DipoleState s;
    PopulationTrace tr;
    record(tr, s, 0.0);
    CHECK(tr.size() == 1);
    CHECK(tr.population(0) == doctest::Approx(1.0));
    s.P = cplx{0.5, 0.5};
    record(tr, s, 1e-15);
    CHECK(tr.size() == 2);
    CHECK(tr.population(1) == doctest::Approx(0.5));
}
