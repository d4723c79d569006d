// analysis.hpp - observable extraction from population traces
#pragma once

#include <stdexcept>
#include <vector>

#include "qedtd/oscillator.hpp"

namespace qedtd {

// Raised when the minima-spacing and spectral-peak estimators disagree or
// the trace carries no usable oscillation.
struct AmbiguousOscillation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecayFit {
    double tau = 0.0;        // s, -1/slope of the ln|P|^2 fit
    double r_squared = 0.0;
    double t_start = 0.0, t_end = 0.0;
    bool non_exponential = false; // r^2 < 0.95 or non-decaying slope
    bool envelope_used = false;   // fit ran on local maxima of |P|^2
};

enum class OscillationMethod { MinimaSpacing, SpectralPeak };

struct OscillationFit {
    double omega = 0.0;          // rad/s, angular frequency of |P|^2
    OscillationMethod method = OscillationMethod::MinimaSpacing;
    double uncertainty = 0.0;    // rad/s
    double omega_spectral = 0.0; // cross-check estimate
};

struct TraceComparison {
    double linf_rel = 0.0; // relative to the sup of the reference |P|^2
    double l2_rel = 0.0;
    double t0 = 0.0, t1 = 0.0; // common window
};

// Least-squares line fit of ln|P(t)|^2 on [t_start, t_end]. If the trace
// oscillates (>= 3 interior maxima in the window) the fit runs on the
// envelope of local maxima, otherwise on the raw samples. Flags
// NonExponential instead of failing when r^2 < 0.95.
DecayFit fit_exponential_decay(const PopulationTrace& trace, double t_start,
                               double t_end);

// Angular frequency of the |P|^2 oscillation. Primary estimate: mean
// spacing of successive (parabolically refined) minima; cross-checked
// against the discrete-spectrum peak of |P|^2 minus its mean. Throws
// AmbiguousOscillation when fewer than 3 full periods are present or the
// two estimators disagree by more than 5%.
OscillationFit extract_oscillation_frequency(const PopulationTrace& trace);

// Relative error norms over |P|^2 on the overlapping time window, with the
// second trace linearly resampled onto the first one's time stamps.
TraceComparison compare_traces(const PopulationTrace& a, const PopulationTrace& b);

} // namespace qedtd
