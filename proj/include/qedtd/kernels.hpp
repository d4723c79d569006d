// kernels.hpp - data-parallel Yee update kernels (serial and OpenMP)
#pragma once

#include "qedtd/engine.hpp"
#include "qedtd/fields.hpp"
#include "qedtd/types.hpp"

namespace qedtd::kernels {

// Each driver dispatches the same per-row / per-range routines either
// serially or under OpenMP; results are bit-identical by construction
// (no reductions, one shared loop body compiled once).

void update_h_1d(FieldState& f, const Workspace1D& ws, ExecPolicy exec);
void update_e_1d(FieldState& f, const Workspace1D& ws, ExecPolicy exec);

void update_h_2d(FieldState& f, const Workspace2D& ws, ExecPolicy exec);
void update_e_2d(FieldState& f, const Workspace2D& ws, ExecPolicy exec);

} // namespace qedtd::kernels
