// oscillator.hpp - complex dipole oscillator coupled to the field solver
#pragma once

#include <vector>

#include "qedtd/constants.hpp"
#include "qedtd/emitter.hpp"
#include "qedtd/grid.hpp"
#include "qedtd/types.hpp"

namespace qedtd {

// Precomputed one-step propagation factors of the oscillator.
//
// Dipole-current model:   dP/dt = -i w0 P + i (d_eg^2/hbar) E(r0,t)
// Integral-source model:  df/dt = -i w0 f - i (d_eg^2 w0^2/hbar) E(r0,t)
//
// Sign convention: with the source current J = N_D delta_D dP/dt (resp.
// the running integral of f) subtracted in the E update, these drive signs
// put the oscillator on the radiation-damped branch - the emitter loses
// energy to the field it radiates. The opposite drive sign is anti-damped.
//
// The stiff w0 rotation is integrated exactly; the field source enters
// through a midpoint quadrature:
//   P(t+dt) = e^{-i w0 dt} P(t) + gain * E(t+dt/2)
struct OscillatorParams {
    double dt = 0.0;
    cplx rot{1.0, 0.0};      // e^{-i w0 dt}
    cplx gain{0.0, 0.0};     // +i (d^2/hbar) dt e^{-i w0 dt/2}           (P model)
                             // -i (d^2 w0^2/hbar) dt e^{-i w0 dt/2}      (f model)
};

OscillatorParams make_oscillator_params(CouplingModel model, const EmitterSpec& e,
                                        double dt, const PhysicalConstants& k = {});

struct DipoleState {
    CouplingModel model = CouplingModel::DipoleCurrent;
    cplx P{1.0, 0.0};       // dipole-current amplitude, P(0) = 1
    cplx P_prev{1.0, 0.0};
    cplx f{1.0, 0.0};       // integral-source amplitude, f(0) = 1
    cplx I{0.0, 0.0};       // running integral of f (trapezoid rule)

    cplx amplitude() const { return model == CouplingModel::DipoleCurrent ? P : f; }
};

// Advance P by one dt given the time-centered field sample at the emitter.
void update_oscillator_p(DipoleState& s, cplx e_mid, const OscillatorParams& p);

// Advance f by one dt and accumulate I(t) by the trapezoid rule.
void update_oscillator_f(DipoleState& s, cplx e_mid, const OscillatorParams& p);

// Polarization current density at the emitter node:
// N_D * (delta averaged over one Yee cell) * S, where S = dP/dt for the
// dipole-current model (time-centered difference of the stored values) or
// S = I(t) for the integral-source model.
cplx injected_current(const DipoleState& s, const Grid& g, double n_d);

// Recorded emitter observable.
struct PopulationTrace {
    std::vector<double> t;  // s
    std::vector<cplx> P;

    std::size_t size() const { return t.size(); }
    double population(std::size_t i) const { return std::norm(P[i]); }
    std::vector<double> population_series() const;
};

// Appends (t, P, |P|^2); sampling decimation is the caller's choice.
void record(PopulationTrace& trace, const DipoleState& s, double t);

} // namespace qedtd
