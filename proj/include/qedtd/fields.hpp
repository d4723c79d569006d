// fields.hpp - complex E/H field storage on the staggered Yee lattice
#pragma once

#include <vector>

#include "qedtd/grid.hpp"
#include "qedtd/types.hpp"

namespace qedtd {

// Field arrays at one instant of the leapfrog cycle: after step n the
// state holds E at time n*dt and H at (n-1/2)*dt.
//
// 1D:  Ey at integer nodes i (nx+1 values), Hz at i+1/2 (nx values).
// 2D:  Ez at (i,j), Hx at (i,j+1/2), Hy at (i+1/2,j).
// The UPML auxiliary fields Dz/Bx/By mirror Ez/Hx/Hy and are allocated
// only when the grid uses a UPML boundary.
struct FieldState {
    int dim = 1;
    int nx = 0, ny = 0;
    long step = 0;

    std::vector<cplx> Ey, Hz;       // 1D
    std::vector<cplx> Ez, Hx, Hy;   // 2D
    std::vector<cplx> Dz, Bx, By;   // 2D UPML auxiliaries

    std::size_t ez_idx(int i, int j) const {
        return static_cast<std::size_t>(j) * (nx + 1) + i;
    }
    std::size_t hx_idx(int i, int j) const { // Hx at (i, j+1/2)
        return static_cast<std::size_t>(j) * (nx + 1) + i;
    }
    std::size_t hy_idx(int i, int j) const { // Hy at (i+1/2, j)
        return static_cast<std::size_t>(j) * nx + i;
    }
};

FieldState make_fields(const Grid& g);

} // namespace qedtd
