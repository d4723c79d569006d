// kernels.cpp - Yee update loops
//
// Compiled with -ffp-contract=off (see src/CMakeLists.txt) so the serial
// and OpenMP paths evaluate identical IEEE expressions element by element.
#include "qedtd/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qedtd::kernels {

namespace {

// ---------------------------------------------------------------- 1D ---

void hz_range_1d(cplx* __restrict hz, const cplx* __restrict ey, int i0, int i1,
                 double ch) {
    for (int i = i0; i < i1; ++i)
        hz[i] -= ch * (ey[i + 1] - ey[i]);
}

void ey_range_1d(cplx* __restrict ey, const cplx* __restrict hz,
                 const double* __restrict ce, int i0, int i1) {
    for (int i = i0; i < i1; ++i)
        ey[i] -= ce[i] * (hz[i] - hz[i - 1]);
}

template <typename Fn>
void run_chunked(int n0, int n1, ExecPolicy exec, Fn&& body) {
#ifdef _OPENMP
    if (exec == ExecPolicy::OpenMP) {
#pragma omp parallel
        {
            const int threads = omp_get_num_threads();
            const int tid = omp_get_thread_num();
            const int span = n1 - n0;
            const int chunk = (span + threads - 1) / threads;
            const int a = n0 + tid * chunk;
            const int b = std::min(n1, a + chunk);
            if (a < b)
                body(a, b);
        }
        return;
    }
#else
    (void)exec;
#endif
    body(n0, n1);
}

// ---------------------------------------------------------------- 2D ---

struct Span2D {
    const Workspace2D* ws;
    FieldState* f;
};

void hx_row_plain(Span2D s, int j, int i0, int i1) {
    auto& f = *s.f;
    cplx* __restrict hx = f.Hx.data();
    const cplx* __restrict ez = f.Ez.data();
    const double ch = s.ws->ch_y;
    const std::size_t row = f.hx_idx(0, j);
    const std::size_t ezr = f.ez_idx(0, j);
    const int stride = f.nx + 1;
    for (int i = i0; i < i1; ++i)
        hx[row + i] -= ch * (ez[ezr + stride + i] - ez[ezr + i]);
}

void hx_row_pml(Span2D s, int j, int i0, int i1) {
    auto& f = *s.f;
    const Workspace2D& w = *s.ws;
    cplx* __restrict hx = f.Hx.data();
    cplx* __restrict bx = f.Bx.data();
    const cplx* __restrict ez = f.Ez.data();
    const std::size_t row = f.hx_idx(0, j);
    const std::size_t ezr = f.ez_idx(0, j);
    const int stride = f.nx + 1;
    const double c1 = w.bx_c1[j], c2 = w.bx_c2[j];
    for (int i = i0; i < i1; ++i) {
        const cplx b_old = bx[row + i];
        const cplx d_ez = (ez[ezr + stride + i] - ez[ezr + i]) * w.inv_dy;
        const cplx b_new = c1 * b_old - c2 * d_ez;
        bx[row + i] = b_new;
        hx[row + i] += w.hx_p[i] * b_new - w.hx_m[i] * b_old;
    }
}

void hy_row_plain(Span2D s, int j, int i0, int i1) {
    auto& f = *s.f;
    cplx* __restrict hy = f.Hy.data();
    const cplx* __restrict ez = f.Ez.data();
    const double ch = s.ws->ch_x;
    const std::size_t row = f.hy_idx(0, j);
    const std::size_t ezr = f.ez_idx(0, j);
    for (int i = i0; i < i1; ++i)
        hy[row + i] += ch * (ez[ezr + i + 1] - ez[ezr + i]);
}

void hy_row_pml(Span2D s, int j, int i0, int i1) {
    auto& f = *s.f;
    const Workspace2D& w = *s.ws;
    cplx* __restrict hy = f.Hy.data();
    cplx* __restrict by = f.By.data();
    const cplx* __restrict ez = f.Ez.data();
    const std::size_t row = f.hy_idx(0, j);
    const std::size_t ezr = f.ez_idx(0, j);
    const double hp = w.hy_p[j], hm = w.hy_m[j];
    for (int i = i0; i < i1; ++i) {
        const cplx b_old = by[row + i];
        const cplx d_ez = (ez[ezr + i + 1] - ez[ezr + i]) * w.inv_dx;
        const cplx b_new = w.by_c1[i] * b_old + w.by_c2[i] * d_ez;
        by[row + i] = b_new;
        hy[row + i] += hp * b_new - hm * b_old;
    }
}

void ez_row_plain(Span2D s, int j, int i0, int i1) {
    auto& f = *s.f;
    const Workspace2D& w = *s.ws;
    cplx* __restrict ez = f.Ez.data();
    const cplx* __restrict hx = f.Hx.data();
    const cplx* __restrict hy = f.Hy.data();
    const std::size_t ezr = f.ez_idx(0, j);
    const std::size_t hyr = f.hy_idx(0, j);
    const std::size_t hxr = f.hx_idx(0, j);
    const int hx_stride = f.nx + 1;
    for (int i = i0; i < i1; ++i) {
        const cplx curl = (hy[hyr + i] - hy[hyr + i - 1]) * w.inv_dx -
                          (hx[hxr + i] - hx[hxr - hx_stride + i]) * w.inv_dy;
        ez[ezr + i] += w.ce[ezr + i] * curl;
    }
}

void ez_row_pml(Span2D s, int j, int i0, int i1) {
    auto& f = *s.f;
    const Workspace2D& w = *s.ws;
    cplx* __restrict ez = f.Ez.data();
    cplx* __restrict dz = f.Dz.data();
    const cplx* __restrict hx = f.Hx.data();
    const cplx* __restrict hy = f.Hy.data();
    const std::size_t ezr = f.ez_idx(0, j);
    const std::size_t hyr = f.hy_idx(0, j);
    const std::size_t hxr = f.hx_idx(0, j);
    const int hx_stride = f.nx + 1;
    const double e1 = w.ez_c1[j], e2 = w.ez_c2[j];
    for (int i = i0; i < i1; ++i) {
        const cplx curl = (hy[hyr + i] - hy[hyr + i - 1]) * w.inv_dx -
                          (hx[hxr + i] - hx[hxr - hx_stride + i]) * w.inv_dy;
        const cplx d_old = dz[ezr + i];
        const cplx d_new = w.dz_c1[i] * d_old + w.dz_c2[i] * curl;
        dz[ezr + i] = d_new;
        ez[ezr + i] = e1 * ez[ezr + i] + e2 * (d_new - d_old) * w.inv_eps0eps[ezr + i];
    }
}

// Dispatch one logical row of an update, splitting it into PML and plain
// segments. `row_in_pml` marks rows whose transverse sigma is nonzero.
template <typename PlainFn, typename PmlFn>
void dispatch_row(Span2D s, int j, int i0, int i1, bool row_in_pml, bool has_pml,
                  int px0, int px1, PlainFn plain, PmlFn pml) {
    if (!has_pml) {
        plain(s, j, i0, i1);
        return;
    }
    if (row_in_pml) {
        pml(s, j, i0, i1);
        return;
    }
    // interior row: PML columns at both ends, plain middle
    const int a = std::max(i0, px0);
    const int b = std::min(i1, px1);
    if (i0 < a)
        pml(s, j, i0, a);
    if (a < b)
        plain(s, j, a, b);
    if (b < i1)
        pml(s, j, b, i1);
}

template <typename RowFn>
void run_rows(int j0, int j1, ExecPolicy exec, RowFn&& row) {
#ifdef _OPENMP
    if (exec == ExecPolicy::OpenMP) {
#pragma omp parallel for schedule(static)
        for (int j = j0; j < j1; ++j)
            row(j);
        return;
    }
#else
    (void)exec;
#endif
    for (int j = j0; j < j1; ++j)
        row(j);
}

} // namespace

void update_h_1d(FieldState& f, const Workspace1D& ws, ExecPolicy exec) {
    run_chunked(0, f.nx, exec, [&](int a, int b) {
        hz_range_1d(f.Hz.data(), f.Ey.data(), a, b, ws.ch);
    });
}

void update_e_1d(FieldState& f, const Workspace1D& ws, ExecPolicy exec) {
    run_chunked(1, f.nx, exec, [&](int a, int b) {
        ey_range_1d(f.Ey.data(), f.Hz.data(), ws.ce.data(), a, b);
    });
}

void update_h_2d(FieldState& f, const Workspace2D& ws, ExecPolicy exec) {
    Span2D s{&ws, &f};
    const int p = ws.pml;
    const bool has_pml = p > 0;
    // Hx rows: j in [0, ny); sigma_y sampled at j+1/2
    run_rows(0, ws.ny, exec, [&, s](int j) {
        const bool row_pml = has_pml && (j < p || j >= ws.ny - p);
        dispatch_row(s, j, 0, ws.nx + 1, row_pml, has_pml, p, ws.nx - p + 1,
                     hx_row_plain, hx_row_pml);
    });
    // Hy rows: j in [0, ny]; sigma_x sampled at i+1/2
    run_rows(0, ws.ny + 1, exec, [&, s](int j) {
        const bool row_pml = has_pml && (j < p || j > ws.ny - p);
        dispatch_row(s, j, 0, ws.nx, row_pml, has_pml, p, ws.nx - p,
                     hy_row_plain, hy_row_pml);
    });
}

void update_e_2d(FieldState& f, const Workspace2D& ws, ExecPolicy exec) {
    Span2D s{&ws, &f};
    const int p = ws.pml;
    const bool has_pml = p > 0;
    // Ez rows: interior nodes only; boundary nodes stay PEC
    run_rows(1, ws.ny, exec, [&, s](int j) {
        const bool row_pml = has_pml && (j < p || j > ws.ny - p);
        dispatch_row(s, j, 1, ws.nx, row_pml, has_pml, p, ws.nx - p + 1,
                     ez_row_plain, ez_row_pml);
    });
}

} // namespace qedtd::kernels
