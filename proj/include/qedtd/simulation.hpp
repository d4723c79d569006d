// simulation.hpp - self-consistent oscillator-field stepping
#pragma once

#include <optional>

#include "qedtd/engine.hpp"
#include "qedtd/oscillator.hpp"

namespace qedtd {

// Cumulative Poynting flux through two planes of a 1D grid (positive
// outward) plus the work done by the source on the field; used for the
// weak-coupling energy bookkeeping checks. All per unit cross section.
struct EnergyLedger {
    int probe_left = 0, probe_right = 0; // Hz half-node indices
    double outflux = 0.0;                // J/m^2 through both probes
    double source_work = 0.0;            // J/m^2 delivered by the emitter
};

struct Simulation {
    FieldStepper stepper;
    EmitterSpec emitter;
    OscillatorParams osc;
    DipoleState dipole;
    double n_d = 1.0;              // dimensional normalization N_D
    int decimation = 1;
    PopulationTrace trace;
    std::optional<EnergyLedger> ledger;

    double dt() const { return stepper.grid.dt; }
    double time() const { return static_cast<double>(stepper.fields.step) * dt(); }
};

Simulation make_simulation(const Grid& g, const EmitterSpec& emitter,
                           CouplingModel coupling, ExecPolicy exec,
                           int decimation = 1, const PhysicalConstants& k = {});

// Advance the coupled system by n steps. The field sample driving the
// oscillator is time-centered: the per-step linear closure solves the
// oscillator amplitude and the emitter-node E update simultaneously, then
// the source current S (dP/dt, or the midpoint of the running integral)
// is subtracted in the E update. Records the trace every `decimation`
// steps and aborts with NumericalError on non-finite amplitudes.
void advance(Simulation& sim, long n_steps);

// Number of steps covering `duration` (rounded up).
long steps_for_duration(const Simulation& sim, double duration);

} // namespace qedtd
