// simulation.cpp - coupled leapfrog loop with the emitter-node closure
#include "qedtd/simulation.hpp"

#include <cmath>
#include <string>

namespace qedtd {

Simulation make_simulation(const Grid& g, const EmitterSpec& emitter,
                           CouplingModel coupling, ExecPolicy exec,
                           int decimation, const PhysicalConstants& k) {
    Simulation sim;
    sim.stepper = make_stepper(g, exec, k);
    sim.emitter = emitter;
    sim.dipole.model = coupling;
    sim.osc = make_oscillator_params(coupling, emitter, g.dt, k);
    sim.n_d = normalization_factor(emitter);
    sim.decimation = decimation;
    record(sim.trace, sim.dipole, 0.0);
    return sim;
}

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Poynting flux through a 1D plane at Hz node i+1/2, time-centered between
// E^n and E^{n+1}.
double plane_flux(const FieldState& f, const std::vector<cplx>& e_prev, int i) {
    const cplx e_avg = 0.25 * (e_prev[i] + e_prev[i + 1] + f.Ey[i] + f.Ey[i + 1]);
    const cplx h = f.Hz[i];
    return e_avg.real() * h.real() + e_avg.imag() * h.imag(); // Re(E conj(H))
}

} // namespace

void advance(Simulation& sim, long n_steps) {
    FieldStepper& fs = sim.stepper;
    const Grid& g = fs.grid;
    const double dt = g.dt;
    const double eps_e = g.eps_at_emitter();
    const double beta_c = sim.n_d * g.inv_cell_measure() / (fs.consts.eps0 * eps_e);
    const PhysicalConstants& k = fs.consts;
    // A zero-dipole emitter neither radiates nor absorbs: skip the source
    // exchange entirely and let the amplitude rotate freely.
    const bool coupled = sim.emitter.d_eg_sq() > 0.0;

    std::vector<cplx> e_prev_ledger;

    for (long s = 0; s < n_steps; ++s) {
        const cplx e_now = fs.e_at_emitter();
        if (sim.ledger && g.dim == 1)
            e_prev_ledger = fs.fields.Ey;

        fs.update_h();
        const cplx e_tilde = fs.e_curl_preview_at_emitter();

        cplx source_current;
        cplx e_mid;
        if (!coupled) {
            if (sim.dipole.model == CouplingModel::DipoleCurrent)
                update_oscillator_p(sim.dipole, cplx{}, sim.osc);
            else
                update_oscillator_f(sim.dipole, cplx{}, sim.osc);
        } else if (sim.dipole.model == CouplingModel::DipoleCurrent) {
            // E' = Etilde - beta_c (P' - P);  P' = rot P + gain (E + E')/2
            const cplx p = sim.dipole.P;
            const cplx p_new = (sim.osc.rot * p +
                                0.5 * sim.osc.gain * (e_now + e_tilde + beta_c * p)) /
                               (1.0 + 0.5 * sim.osc.gain * beta_c);
            e_mid = 0.5 * (e_now + e_tilde - beta_c * (p_new - p));
            update_oscillator_p(sim.dipole, e_mid, sim.osc);
            source_current = injected_current(sim.dipole, g, sim.n_d);
        } else {
            // Source is the midpoint of the trapezoid-accumulated integral:
            // S = I + (dt/4)(f + f');  E' = Etilde - beta_c dt S
            const cplx f0 = sim.dipole.f;
            const cplx i0 = sim.dipole.I;
            const double bt = beta_c * dt;
            const cplx f_new =
                (sim.osc.rot * f0 +
                 0.5 * sim.osc.gain * (e_now + e_tilde - bt * i0 - bt * 0.25 * dt * f0)) /
                (1.0 + sim.osc.gain * bt * dt / 8.0);
            const cplx s_mid = i0 + 0.25 * dt * (f0 + f_new);
            e_mid = 0.5 * (e_now + e_tilde - bt * s_mid);
            update_oscillator_f(sim.dipole, e_mid, sim.osc);
            source_current = sim.n_d * g.inv_cell_measure() * s_mid;
        }

        fs.update_e(source_current);

        if (!finite(sim.dipole.amplitude()))
            throw NumericalError("non-finite oscillator amplitude at step " +
                                 std::to_string(fs.fields.step));
        if (fs.fields.step % 512 == 0)
            fs.check_finite();

        if (sim.ledger && g.dim == 1) {
            EnergyLedger& led = *sim.ledger;
            const FieldState& f = fs.fields;
            led.outflux += dt * (plane_flux(f, e_prev_ledger, led.probe_right) -
                                 plane_flux(f, e_prev_ledger, led.probe_left));
            // Work done by the source on the field over one cell, per unit
            // cross section: -Re(conj(J) E_mid) dx dt. e_mid from the
            // closure is already centered at n+1/2.
            const cplx j = source_current;
            led.source_work -= dt * g.dx *
                               (j.real() * e_mid.real() + j.imag() * e_mid.imag());
        }
        (void)k;

        if (fs.fields.step % sim.decimation == 0)
            record(sim.trace, sim.dipole, sim.time());
    }
}

long steps_for_duration(const Simulation& sim, double duration) {
    return static_cast<long>(std::ceil(duration / sim.dt() - 1e-9));
}

} // namespace qedtd
