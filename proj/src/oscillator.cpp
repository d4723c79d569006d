// oscillator.cpp - exact-rotation oscillator update and source current
#include "qedtd/oscillator.hpp"

#include <cmath>

namespace qedtd {

OscillatorParams make_oscillator_params(CouplingModel model, const EmitterSpec& e,
                                        double dt, const PhysicalConstants& k) {
    OscillatorParams p;
    p.dt = dt;
    const double w0 = e.omega0;
    p.rot = std::polar(1.0, -w0 * dt);
    const cplx rot_half = std::polar(1.0, -w0 * dt / 2.0);
    const double coupling = e.d_eg_sq() / k.hbar;
    if (model == CouplingModel::DipoleCurrent)
        p.gain = cplx{0.0, 1.0} * coupling * dt * rot_half;
    else
        p.gain = cplx{0.0, -1.0} * (coupling * w0 * w0) * dt * rot_half;
    return p;
}

void update_oscillator_p(DipoleState& s, cplx e_mid, const OscillatorParams& p) {
    s.P_prev = s.P;
    s.P = p.rot * s.P + p.gain * e_mid;
}

void update_oscillator_f(DipoleState& s, cplx e_mid, const OscillatorParams& p) {
    const cplx f_old = s.f;
    s.f = p.rot * s.f + p.gain * e_mid;
    s.I += 0.5 * p.dt * (f_old + s.f);
}

cplx injected_current(const DipoleState& s, const Grid& g, double n_d) {
    const cplx src = (s.model == CouplingModel::DipoleCurrent)
                         ? (s.P - s.P_prev) / g.dt
                         : s.I;
    return n_d * g.inv_cell_measure() * src;
}

std::vector<double> PopulationTrace::population_series() const {
    std::vector<double> out(P.size());
    for (std::size_t i = 0; i < P.size(); ++i)
        out[i] = std::norm(P[i]);
    return out;
}

void record(PopulationTrace& trace, const DipoleState& s, double t) {
    trace.t.push_back(t);
    trace.P.push_back(s.amplitude());
}

} // namespace qedtd
