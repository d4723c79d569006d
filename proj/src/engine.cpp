// engine.cpp - workspace construction, boundary updates, stepping
#include "qedtd/engine.hpp"

#include <cmath>
#include <string>

#include "qedtd/kernels.hpp"

namespace qedtd {

FieldState make_fields(const Grid& g) {
    FieldState f;
    f.dim = g.dim;
    f.nx = g.nx;
    f.ny = g.ny;
    if (g.dim == 1) {
        f.Ey.assign(g.nx + 1, cplx{});
        f.Hz.assign(g.nx, cplx{});
    } else {
        const std::size_t n_ez = static_cast<std::size_t>(g.nx + 1) * (g.ny + 1);
        const std::size_t n_hx = static_cast<std::size_t>(g.nx + 1) * g.ny;
        const std::size_t n_hy = static_cast<std::size_t>(g.nx) * (g.ny + 1);
        f.Ez.assign(n_ez, cplx{});
        f.Hx.assign(n_hx, cplx{});
        f.Hy.assign(n_hy, cplx{});
        if (g.boundary.kind == BoundaryKind::UPML2D) {
            f.Dz.assign(n_ez, cplx{});
            f.Bx.assign(n_hx, cplx{});
            f.By.assign(n_hy, cplx{});
        }
    }
    return f;
}

namespace {

Workspace1D make_ws1(const Grid& g, const PhysicalConstants& k) {
    Workspace1D w;
    w.ch = g.dt / (k.mu0 * g.dx);
    w.ce.resize(g.nx + 1);
    for (int i = 0; i <= g.nx; ++i)
        w.ce[i] = g.dt / (k.eps0 * g.eps_r[g.node(i)] * g.dx);
    if (g.boundary.kind == BoundaryKind::Mur1D) {
        w.mur = true;
        const double cl = k.c / std::sqrt(g.eps_r[g.node(0)]);
        const double cr = k.c / std::sqrt(g.eps_r[g.node(g.nx)]);
        w.mur_kappa_left = (cl * g.dt - g.dx) / (cl * g.dt + g.dx);
        w.mur_kappa_right = (cr * g.dt - g.dx) / (cr * g.dt + g.dx);
    }
    return w;
}

// Polynomial-graded conductivity profile along one axis. `half` shifts the
// sample point to the staggered position.
std::vector<double> sigma_profile(int n_samples, int n_cells, int p, double d,
                                  double dt_unused, double sigma_max, double order,
                                  bool half) {
    (void)d;
    (void)dt_unused;
    std::vector<double> s(n_samples, 0.0);
    if (p <= 0)
        return s;
    for (int i = 0; i < n_samples; ++i) {
        const double pos = i + (half ? 0.5 : 0.0); // in cells
        double depth = 0.0;
        if (pos < p)
            depth = (p - pos) / p;
        else if (pos > n_cells - p)
            depth = (pos - (n_cells - p)) / p;
        if (depth > 0.0)
            s[i] = sigma_max * std::pow(depth, order);
    }
    return s;
}

Workspace2D make_ws2(const Grid& g, const PhysicalConstants& k) {
    Workspace2D w;
    w.nx = g.nx;
    w.ny = g.ny;
    w.inv_dx = 1.0 / g.dx;
    w.inv_dy = 1.0 / g.dy;
    w.dt = g.dt;
    w.ch_x = g.dt / (k.mu0 * g.dx);
    w.ch_y = g.dt / (k.mu0 * g.dy);
    const std::size_t n = g.node_count();
    w.ce.resize(n);
    w.inv_eps0eps.resize(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        w.ce[idx] = g.dt / (k.eps0 * g.eps_r[idx]);
        w.inv_eps0eps[idx] = 1.0 / (k.eps0 * g.eps_r[idx]);
    }
    if (g.boundary.kind != BoundaryKind::UPML2D)
        return w;

    const int p = g.boundary.pml_cells;
    w.pml = p;
    if (p == 0)
        return w; // degenerates to the PEC backing

    const double m = g.boundary.pml_order;
    const double delta = p * g.dx;
    const double sigma_max =
        -(m + 1.0) * k.eps0 * k.c * std::log(g.boundary.pml_target_reflection) /
        (2.0 * delta);

    const auto sx_int = sigma_profile(g.nx + 1, g.nx, p, g.dx, g.dt, sigma_max, m, false);
    const auto sx_half = sigma_profile(g.nx, g.nx, p, g.dx, g.dt, sigma_max, m, true);
    const auto sy_int = sigma_profile(g.ny + 1, g.ny, p, g.dy, g.dt, sigma_max, m, false);
    const auto sy_half = sigma_profile(g.ny, g.ny, p, g.dy, g.dt, sigma_max, m, true);

    auto decay_pair = [&](double sigma, double& c1, double& c2, bool dt_scaled) {
        const double a = sigma * g.dt / (2.0 * k.eps0);
        c1 = (1.0 - a) / (1.0 + a);
        c2 = (dt_scaled ? g.dt : 1.0) / (1.0 + a);
    };

    w.dz_c1.resize(g.nx + 1);
    w.dz_c2.resize(g.nx + 1);
    for (int i = 0; i <= g.nx; ++i)
        decay_pair(sx_int[i], w.dz_c1[i], w.dz_c2[i], true);
    w.ez_c1.resize(g.ny + 1);
    w.ez_c2.resize(g.ny + 1);
    for (int j = 0; j <= g.ny; ++j)
        decay_pair(sy_int[j], w.ez_c1[j], w.ez_c2[j], false);

    w.bx_c1.resize(g.ny);
    w.bx_c2.resize(g.ny);
    for (int j = 0; j < g.ny; ++j)
        decay_pair(sy_half[j], w.bx_c1[j], w.bx_c2[j], true);
    w.hx_p.resize(g.nx + 1);
    w.hx_m.resize(g.nx + 1);
    for (int i = 0; i <= g.nx; ++i) {
        const double a = sx_int[i] * g.dt / (2.0 * k.eps0);
        w.hx_p[i] = (1.0 + a) / k.mu0;
        w.hx_m[i] = (1.0 - a) / k.mu0;
    }

    w.by_c1.resize(g.nx);
    w.by_c2.resize(g.nx);
    for (int i = 0; i < g.nx; ++i)
        decay_pair(sx_half[i], w.by_c1[i], w.by_c2[i], true);
    w.hy_p.resize(g.ny + 1);
    w.hy_m.resize(g.ny + 1);
    for (int j = 0; j <= g.ny; ++j) {
        const double a = sy_int[j] * g.dt / (2.0 * k.eps0);
        w.hy_p[j] = (1.0 + a) / k.mu0;
        w.hy_m[j] = (1.0 - a) / k.mu0;
    }
    return w;
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

} // namespace

FieldStepper make_stepper(const Grid& g, ExecPolicy exec, const PhysicalConstants& k) {
    FieldStepper s;
    s.grid = g;
    s.consts = k;
    s.exec = exec;
    s.fields = make_fields(g);
    if (g.dim == 1)
        s.ws1 = make_ws1(g, k);
    else
        s.ws2 = make_ws2(g, k);
    // Interior PEC nodes (excluding the outer boundary handled by the loops)
    for (int j = (g.dim == 2) ? 1 : 0; j < ((g.dim == 2) ? g.ny : 1); ++j) {
        for (int i = 1; i < g.nx; ++i) {
            if (g.pec[g.node(i, j)])
                s.interior_pec.push_back(g.node(i, j));
        }
    }
    return s;
}

void FieldStepper::update_h() {
    if (grid.dim == 1)
        kernels::update_h_1d(fields, ws1, exec);
    else
        kernels::update_h_2d(fields, ws2, exec);
}

void FieldStepper::update_e(cplx source_current) {
    if (grid.dim == 1) {
        // Mur needs E^n next to each end before the update overwrites it.
        if (ws1.mur) {
            mur.e0 = fields.Ey[0];
            mur.e1 = fields.Ey[1];
            mur.en = fields.Ey[grid.nx];
            mur.en1 = fields.Ey[grid.nx - 1];
        }
        kernels::update_e_1d(fields, ws1, exec);
        if (source_current != cplx{}) {
            const std::size_t e = grid.node(grid.emitter_i);
            fields.Ey[e] -= grid.dt / (consts.eps0 * grid.eps_r[e]) * source_current;
        }
        if (ws1.mur) {
            fields.Ey[0] = mur.e1 + ws1.mur_kappa_left * (fields.Ey[1] - mur.e0);
            fields.Ey[grid.nx] =
                mur.en1 + ws1.mur_kappa_right * (fields.Ey[grid.nx - 1] - mur.en);
        }
    } else {
        kernels::update_e_2d(fields, ws2, exec);
        if (source_current != cplx{}) {
            const std::size_t e = grid.node(grid.emitter_i, grid.emitter_j);
            fields.Ez[e] -= grid.dt / (consts.eps0 * grid.eps_r[e]) * source_current;
        }
    }
    if (!interior_pec.empty()) {
        auto& earr = (grid.dim == 1) ? fields.Ey : fields.Ez;
        for (std::size_t idx : interior_pec)
            earr[idx] = cplx{};
    }
    ++fields.step;
}

cplx FieldStepper::e_at_emitter() const {
    return grid.dim == 1 ? fields.Ey[grid.node(grid.emitter_i)]
                         : fields.Ez[grid.node(grid.emitter_i, grid.emitter_j)];
}

cplx FieldStepper::e_curl_preview_at_emitter() const {
    if (grid.dim == 1) {
        const int i = grid.emitter_i;
        return fields.Ey[i] - ws1.ce[i] * (fields.Hz[i] - fields.Hz[i - 1]);
    }
    const int i = grid.emitter_i, j = grid.emitter_j;
    const std::size_t e = fields.ez_idx(i, j);
    const cplx curl =
        (fields.Hy[fields.hy_idx(i, j)] - fields.Hy[fields.hy_idx(i - 1, j)]) *
            ws2.inv_dx -
        (fields.Hx[fields.hx_idx(i, j)] - fields.Hx[fields.hx_idx(i, j - 1)]) *
            ws2.inv_dy;
    return fields.Ez[e] + ws2.ce[e] * curl;
}

void FieldStepper::check_finite() const {
    auto scan = [&](const std::vector<cplx>& v) {
        for (const cplx& x : v)
            if (!finite(x))
                return false;
        return true;
    };
    const bool ok = (grid.dim == 1) ? scan(fields.Ey) && scan(fields.Hz)
                                    : scan(fields.Ez) && scan(fields.Hx) && scan(fields.Hy);
    if (!ok)
        throw NumericalError("non-finite field detected at step " +
                             std::to_string(fields.step));
}

double discrete_em_energy(const Grid& g, const std::vector<cplx>& e_prev,
                          const FieldState& cur, const PhysicalConstants& k) {
    double u = 0.0;
    if (g.dim == 1) {
        for (int i = 0; i <= g.nx; ++i) {
            const cplx a = e_prev[i], b = cur.Ey[i];
            u += 0.5 * k.eps0 * g.eps_r[g.node(i)] *
                 (a.real() * b.real() + a.imag() * b.imag()) * g.dx;
        }
        for (int i = 0; i < g.nx; ++i)
            u += 0.5 * k.mu0 * std::norm(cur.Hz[i]) * g.dx;
    } else {
        const double cell = g.dx * g.dy;
        for (int j = 0; j <= g.ny; ++j) {
            for (int i = 0; i <= g.nx; ++i) {
                const std::size_t idx = cur.ez_idx(i, j);
                const cplx a = e_prev[idx], b = cur.Ez[idx];
                u += 0.5 * k.eps0 * g.eps_r[idx] *
                     (a.real() * b.real() + a.imag() * b.imag()) * cell;
            }
        }
        for (const cplx& h : cur.Hx)
            u += 0.5 * k.mu0 * std::norm(h) * cell;
        for (const cplx& h : cur.Hy)
            u += 0.5 * k.mu0 * std::norm(h) * cell;
    }
    return u;
}

} // namespace qedtd
