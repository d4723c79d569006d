// modal.cpp - RK4 integration of the three-level amplitude equations
#include "qedtd/modal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qedtd/engine.hpp"

namespace qedtd {

ModeSet modes_pec_box_1d(double l_x, double A, int K, double emitter_pos,
                         double d_eg, const PhysicalConstants& k) {
    if (K < 1)
        throw std::invalid_argument("modes_pec_box_1d: K must be >= 1");
    if (!(emitter_pos > 0.0) || !(emitter_pos < l_x))
        throw std::invalid_argument("modes_pec_box_1d: emitter outside the cavity");
    ModeSet m;
    const double volume = l_x * A;
    for (int n = 1; n <= K; ++n) {
        const double w = n * std::numbers::pi * k.c / l_x;
        const double mode_value =
            std::sqrt(2.0) * std::sin(n * std::numbers::pi * emitter_pos / l_x);
        m.omega.push_back(w);
        m.gamma.push_back(-std::sqrt(w / (2.0 * k.eps0 * k.hbar * volume)) *
                          mode_value * d_eg);
        m.label.push_back({n, 0});
    }
    return m;
}

ModeSet modes_pec_box_2d(double l, double L, double omega_cutoff,
                         std::array<double, 2> emitter_pos, double d_eg,
                         const PhysicalConstants& k) {
    ModeSet m;
    const double volume = l * l * L;
    const double base = std::numbers::pi * k.c / l;
    const int n_max = static_cast<int>(std::ceil(omega_cutoff / base)) + 1;
    struct Entry {
        double w, g;
        int n, mm;
    };
    std::vector<Entry> entries;
    for (int n = 1; n <= n_max; ++n) {
        for (int mm = 1; mm <= n_max; ++mm) {
            const double w = base * std::sqrt(double(n) * n + double(mm) * mm);
            if (w > omega_cutoff)
                continue;
            const double mode_value =
                2.0 * std::sin(n * std::numbers::pi * emitter_pos[0] / l) *
                std::sin(mm * std::numbers::pi * emitter_pos[1] / l);
            const double g =
                -std::sqrt(w / (2.0 * k.eps0 * k.hbar * volume)) * mode_value * d_eg;
            entries.push_back({w, g, n, mm});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.w != b.w)
            return a.w < b.w;
        return std::pair(a.n, a.mm) < std::pair(b.n, b.mm);
    });
    for (const auto& e : entries) {
        m.omega.push_back(e.w);
        m.gamma.push_back(e.g);
        m.label.push_back({e.n, e.mm});
    }
    return m;
}

double ThreeLevelState::norm() const {
    double n = std::norm(a);
    for (const cplx& x : b)
        n += std::norm(x);
    for (const cplx& x : c)
        n += std::norm(x);
    return n;
}

double default_dt_eq1(const ModeSet& modes, double omega0, int steps_per_period,
                      bool include_counter_rotating) {
    double w_fast = omega0;
    if (!modes.omega.empty())
        w_fast = std::max(w_fast, modes.omega.back());
    if (include_counter_rotating && !modes.omega.empty())
        w_fast = std::max(w_fast, 2.0 * omega0 + modes.omega.back());
    return 2.0 * std::numbers::pi / (w_fast * steps_per_period);
}

double second_order_level_shift(const ModeSet& modes, double omega_observed) {
    double shift = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const double g2 = modes.gamma[k] * modes.gamma[k];
        if (std::abs(modes.omega[k] - omega_observed) > 10.0 * std::abs(modes.gamma[k]))
            shift += g2 / (omega_observed - modes.omega[k]);
        shift -= g2 / (omega_observed + modes.omega[k]);
    }
    return shift;
}

double bare_frequency_for_observed(const ModeSet& modes, double omega_observed) {
    return omega_observed - second_order_level_shift(modes, omega_observed);
}

namespace {

// One RK4 step of the amplitude equations; `deriv` writes dy into the
// provided arrays. State layout: a, b[0..K), c[0..K) (c absent under RWA).
struct Eq1System {
    const ModeSet& modes;
    double omega0;
    bool counter_rotating;

    void deriv(const std::vector<cplx>& y, std::vector<cplx>& dy) const {
        const std::size_t K = modes.size();
        const cplx minus_i{0.0, -1.0};
        cplx drive = omega0 * y[0];
        for (std::size_t j = 0; j < K; ++j)
            drive += modes.gamma[j] * y[1 + j];
        if (counter_rotating) {
            for (std::size_t j = 0; j < K; ++j)
                drive += modes.gamma[j] * y[1 + K + j];
        }
        dy[0] = minus_i * drive;
        for (std::size_t j = 0; j < K; ++j)
            dy[1 + j] = minus_i * (modes.omega[j] * y[1 + j] + modes.gamma[j] * y[0]);
        if (counter_rotating) {
            for (std::size_t j = 0; j < K; ++j)
                dy[1 + K + j] = minus_i * ((2.0 * omega0 + modes.omega[j]) * y[1 + K + j] +
                                           modes.gamma[j] * y[0]);
        }
    }
};

OracleResult run_eq1(const ModeSet& modes, double omega0, double t_end, double dt,
                     bool counter_rotating, int record_stride) {
    const std::size_t K = modes.size();
    const std::size_t dimension = counter_rotating ? 1 + 2 * K : 1 + K;
    std::vector<cplx> y(dimension, cplx{}), k1(dimension), k2(dimension),
        k3(dimension), k4(dimension), tmp(dimension);
    y[0] = 1.0;

    Eq1System sys{modes, omega0, counter_rotating};
    const long steps = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
    if (record_stride <= 0)
        record_stride = std::max(1L, steps / 20000);

    OracleResult res;
    res.dt_used = dt;
    res.steps = steps;
    DipoleState probe; // reuse the trace recording convention: P column = a
    probe.model = CouplingModel::DipoleCurrent;
    probe.P = y[0];
    record(res.trace, probe, 0.0);

    double max_drift = 0.0;
    auto norm_of = [&](const std::vector<cplx>& v) {
        double n = 0.0;
        for (const cplx& x : v)
            n += std::norm(x);
        return n;
    };

    for (long s = 0; s < steps; ++s) {
        sys.deriv(y, k1);
        for (std::size_t i = 0; i < dimension; ++i)
            tmp[i] = y[i] + 0.5 * dt * k1[i];
        sys.deriv(tmp, k2);
        for (std::size_t i = 0; i < dimension; ++i)
            tmp[i] = y[i] + 0.5 * dt * k2[i];
        sys.deriv(tmp, k3);
        for (std::size_t i = 0; i < dimension; ++i)
            tmp[i] = y[i] + dt * k3[i];
        sys.deriv(tmp, k4);
        for (std::size_t i = 0; i < dimension; ++i)
            y[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        if ((s + 1) % record_stride == 0 || s + 1 == steps) {
            probe.P = y[0];
            record(res.trace, probe, (s + 1) * dt);
        }
        if ((s + 1) % 512 == 0 || s + 1 == steps)
            max_drift = std::max(max_drift, std::abs(norm_of(y) - 1.0));
    }

    res.max_norm_drift = max_drift;
    res.final_state.a = y[0];
    res.final_state.b.assign(y.begin() + 1, y.begin() + 1 + K);
    if (counter_rotating)
        res.final_state.c.assign(y.begin() + 1 + K, y.end());
    res.final_state.t = steps * dt;
    return res;
}

} // namespace

OracleResult integrate_eq1(const ModeSet& modes, double omega0, double t_end,
                           double dt_ode, bool include_counter_rotating,
                           int record_stride) {
    OracleResult res =
        run_eq1(modes, omega0, t_end, dt_ode, include_counter_rotating, record_stride);
    if (res.max_norm_drift > 1e-6) {
        res = run_eq1(modes, omega0, t_end, dt_ode / 2.0, include_counter_rotating,
                      record_stride);
        if (res.max_norm_drift > 1e-6)
            throw NumericalError("modal reference: norm drift " +
                                 std::to_string(res.max_norm_drift) +
                                 " exceeds 1e-6 after dt refinement");
    }
    return res;
}

double tau_free_space_1d(const EmitterSpec& e, const PhysicalConstants& k) {
    return k.eps0 * k.hbar * k.c * e.cross_section_A / (e.d_eg_sq() * e.omega0);
}

double tau_free_space_2d(const EmitterSpec& e, const PhysicalConstants& k) {
    return 2.0 * k.eps0 * k.hbar * k.c * k.c * e.axial_length_L /
           (e.d_eg_sq() * e.omega0 * e.omega0);
}

double rabi_frequency_1d(const EmitterSpec& e, double l_x, const PhysicalConstants& k) {
    return std::sqrt(e.omega0 * e.d_eg_sq() /
                     (k.hbar * k.eps0 * l_x * e.cross_section_A));
}

double rabi_frequency_degenerate_2d(const EmitterSpec& e, double l,
                                    const PhysicalConstants& k) {
    const double w13 = cavity_mode_frequency(l, 1, 3, k);
    return std::sqrt(2.0 * w13 * e.d_eg_sq() /
                     (k.hbar * k.eps0 * l * l * e.axial_length_L));
}

double cavity_mode_frequency(double l, int n, int m, const PhysicalConstants& k) {
    return std::numbers::pi * k.c / l * std::sqrt(double(n) * n + double(m) * m);
}

ClosedFormPredictions closed_forms(const EmitterSpec& e, double l_x_1d, double l_2d,
                                   const PhysicalConstants& k) {
    ClosedFormPredictions p;
    p.tau_1d = tau_free_space_1d(e, k);
    p.tau_2d = tau_free_space_2d(e, k);
    p.f_r_1d = rabi_frequency_1d(e, l_x_1d, k);
    p.f_r_degenerate = rabi_frequency_degenerate_2d(e, l_2d, k);
    return p;
}

} // namespace qedtd
