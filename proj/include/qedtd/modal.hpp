// modal.hpp - independent modal reference: three-level amplitude equations
// over analytically known cavity mode sets, plus closed-form predictions
#pragma once

#include <array>
#include <vector>

#include "qedtd/constants.hpp"
#include "qedtd/emitter.hpp"
#include "qedtd/oscillator.hpp"

namespace qedtd {

// Discrete cavity modes seen by the emitter: frequencies and coupling
// rates gamma_k = -sqrt(omega_k / (2 eps0 hbar V)) * E_k(r0) * d_eg with
// the mode functions normalized to int |E_k|^2 dV = V.
struct ModeSet {
    std::vector<double> omega;              // rad/s, ascending
    std::vector<double> gamma;              // rad/s
    std::vector<std::array<int, 2>> label;  // n or (n, m)
    std::size_t size() const { return omega.size(); }
};

// 1D PEC box of length l_x and cross section A: omega_n = n pi c / l_x,
// E_n(x) = sqrt(2) sin(n pi x / l_x), quantization volume V = l_x A.
ModeSet modes_pec_box_1d(double l_x, double A, int K, double emitter_pos,
                         double d_eg, const PhysicalConstants& k = {});

// 2D PEC square of side l and axial length L: all (n,m) with
// omega_{n,m} = (pi c / l) sqrt(n^2 + m^2) <= cutoff,
// E_{n,m} = 2 sin(n pi x / l) sin(m pi y / l), V = l^2 L.
ModeSet modes_pec_box_2d(double l, double L, double omega_cutoff,
                         std::array<double, 2> emitter_pos, double d_eg,
                         const PhysicalConstants& k = {});

struct ThreeLevelState {
    cplx a{1.0, 0.0};
    std::vector<cplx> b, c;
    double t = 0.0;
    double norm() const;
};

struct OracleResult {
    PopulationTrace trace;   // a(t), |a|^2 in the same schema as the FDTD trace
    ThreeLevelState final_state;
    double max_norm_drift = 0.0;
    double dt_used = 0.0;
    long steps = 0;
};

// dt that resolves the fastest amplitude rotation (counter-rotating terms
// included) with `steps_per_period` samples.
double default_dt_eq1(const ModeSet& modes, double omega0, int steps_per_period,
                      bool include_counter_rotating = true);

// Second-order level shift of the initial state from all non-resonant
// couplings (modes within 10|gamma_k| of omega are treated as resonant and
// excluded). The shift grows with the mode cutoff; like any bare mass it
// is absorbed by renormalization:
double second_order_level_shift(const ModeSet& modes, double omega_observed);

// Bare atomic frequency to feed the amplitude equations so that the
// model's observed (shifted) transition frequency equals omega_observed.
// The field solver's emitter shows no such cutoff shift (its resonant
// self-field is purely dissipative), so comparisons against it use this.
double bare_frequency_for_observed(const ModeSet& modes, double omega_observed);

// Classic RK4 trajectory of (a, b_k, c_k) from a(0) = 1, b = c = 0. With
// include_counter_rotating = false the c_k amplitudes are dropped (the
// rotating-wave reference). If the norm drifts by more than 1e-6, retries
// once with dt/2 and throws NumericalError if that still fails.
OracleResult integrate_eq1(const ModeSet& modes, double omega0, double t_end,
                           double dt_ode, bool include_counter_rotating,
                           int record_stride = 0);

// Closed-form predictions evaluated from the emitter constants.
double tau_free_space_1d(const EmitterSpec& e, const PhysicalConstants& k = {});
double tau_free_space_2d(const EmitterSpec& e, const PhysicalConstants& k = {});
// Single-photon coupling at the antinode of the fundamental 1D cavity mode.
double rabi_frequency_1d(const EmitterSpec& e, double l_x,
                         const PhysicalConstants& k = {});
// Single-mode coupling of the degenerate (1,3)/(3,1) pair at the center of
// the square cavity; the observed population oscillation runs at
// 2*sqrt(2) times this value.
double rabi_frequency_degenerate_2d(const EmitterSpec& e, double l,
                                    const PhysicalConstants& k = {});
double cavity_mode_frequency(double l, int n, int m, const PhysicalConstants& k = {});

struct ClosedFormPredictions {
    double tau_1d = 0.0;
    double tau_2d = 0.0;
    double f_r_1d = 0.0;          // for cavity length l_x
    double f_r_degenerate = 0.0;  // for square side l
};
ClosedFormPredictions closed_forms(const EmitterSpec& e, double l_x_1d, double l_2d,
                                   const PhysicalConstants& k = {});

} // namespace qedtd
