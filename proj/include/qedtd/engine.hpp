// engine.hpp - leapfrog Yee stepping with PEC / Mur / UPML boundaries
#pragma once

#include <stdexcept>
#include <vector>

#include "qedtd/constants.hpp"
#include "qedtd/fields.hpp"
#include "qedtd/grid.hpp"
#include "qedtd/types.hpp"

namespace qedtd {

// Raised when a non-finite field or oscillator amplitude is detected.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precomputed update coefficients for a 1D grid.
struct Workspace1D {
    double ch = 0.0;                // dt / (mu0 * dx)
    std::vector<double> ce;         // dt / (eps0 * eps_r[i] * dx), per E node
    bool mur = false;
    double mur_kappa_left = 0.0;    // (c' dt - dx) / (c' dt + dx)
    double mur_kappa_right = 0.0;
};

// Precomputed update coefficients for a 2D grid, including the graded
// UPML profiles. Region arithmetic with sigma = 0 reduces exactly to the
// plain update, but plain rows/segments are dispatched separately so the
// interior never touches the auxiliary arrays.
struct Workspace2D {
    int nx = 0, ny = 0;
    int pml = 0;                    // PML thickness in cells (0: none)
    double inv_dx = 0.0, inv_dy = 0.0;
    double dt = 0.0;
    double ch_x = 0.0, ch_y = 0.0;  // dt / (mu0 * d)
    std::vector<double> ce;             // dt / (eps0 * eps_r[node]), per E node
    std::vector<double> inv_eps0eps;    // 1 / (eps0 * eps_r[node])
    // Dz update (sigma_x at integer i) and Ez recovery (sigma_y at integer j)
    std::vector<double> dz_c1, dz_c2;
    std::vector<double> ez_c1, ez_c2;
    // Bx update (sigma_y at j+1/2) and Hx recovery (sigma_x at integer i)
    std::vector<double> bx_c1, bx_c2;
    std::vector<double> hx_p, hx_m;
    // By update (sigma_x at i+1/2) and Hy recovery (sigma_y at integer j)
    std::vector<double> by_c1, by_c2;
    std::vector<double> hy_p, hy_m;
};

// First-order Mur needs the previous-step E at the two nodes next to each
// end of the 1D grid.
struct MurMemory {
    cplx e0 = 0.0, e1 = 0.0;        // left end, time n
    cplx en = 0.0, en1 = 0.0;       // right end, time n
};

// One simulation's field solver: grid, coefficients and field arrays.
struct FieldStepper {
    Grid grid;
    PhysicalConstants consts;
    ExecPolicy exec = ExecPolicy::Serial;
    FieldState fields;
    Workspace1D ws1;
    Workspace2D ws2;
    MurMemory mur;
    std::vector<std::size_t> interior_pec; // interior masked E nodes (usually empty)

    // Advance H by half a step (E^n -> H^{n+1/2}).
    void update_h();
    // Advance E by a full step, subtract the source current at the emitter
    // node, then apply the E-side boundary updates.
    void update_e(cplx source_current);
    // Full leapfrog step with the source current for this step.
    void step(cplx source_current) {
        update_h();
        update_e(source_current);
    }

    cplx e_at_emitter() const;
    // The value the E update would assign at the emitter node before the
    // source is subtracted (used for the time-centered source coupling).
    cplx e_curl_preview_at_emitter() const;

    // Throws NumericalError naming the step if any field is non-finite.
    void check_finite() const;
};

FieldStepper make_stepper(const Grid& g, ExecPolicy exec = ExecPolicy::Serial,
                          const PhysicalConstants& k = {});

// Time-staggered discrete EM energy: (eps/2) Re<E^n, E^{n+1}> +
// (mu/2) |H^{n+1/2}|^2, integrated over the grid (per unit cross section
// in 1D, per unit length in 2D). `e_prev` is a snapshot of the E array
// taken before the last step; `cur` holds E^{n+1} and H^{n+1/2}.
double discrete_em_energy(const Grid& g, const std::vector<cplx>& e_prev,
                          const FieldState& cur, const PhysicalConstants& k = {});

} // namespace qedtd
