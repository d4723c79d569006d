// grid.hpp - Yee lattice construction for the supported geometries
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qedtd/constants.hpp"
#include "qedtd/emitter.hpp"

namespace qedtd {

enum class BoundaryKind { PEC, Mur1D, UPML2D };

struct BoundarySpec {
    BoundaryKind kind = BoundaryKind::PEC;
    int pml_cells = 10;            // used iff kind == UPML2D
    double pml_order = 3.0;        // polynomial grading exponent
    double pml_target_reflection = 1e-8;
};

// One material layer of a 1D stack, after snapping to whole cells.
// Kept in the grid so run summaries can report the realized geometry.
struct LayerRecord {
    std::string name;
    double index = 1.0;
    double requested_m = 0.0;
    double snapped_m = 0.0;
    int cells = 0;
};

// Uniform Yee lattice. E nodes live at integer positions (nx+1 along x,
// ny+1 along y in 2D); eps_r and the PEC mask are stored per E node.
// 1D uses (Ey, Hz) along x; 2D is the TM set (Ez, Hx, Hy).
struct Grid {
    int dim = 1;
    double dx = 0.0, dy = 0.0;     // m
    double dt = 0.0;               // s, filled by courant_dt
    int nx = 0, ny = 0;            // cell counts
    std::vector<double> eps_r;     // per E node, >= 1 everywhere
    std::vector<std::uint8_t> pec; // per E node
    BoundarySpec boundary;
    int emitter_i = 0, emitter_j = 0; // E-node index of the emitter
    std::vector<LayerRecord> layers;  // populated by the Bragg builder

    int nodes_x() const { return nx + 1; }
    int nodes_y() const { return dim == 2 ? ny + 1 : 1; }
    std::size_t node_count() const {
        return static_cast<std::size_t>(nodes_x()) * nodes_y();
    }
    std::size_t node(int i, int j = 0) const {
        return static_cast<std::size_t>(j) * nodes_x() + i;
    }
    double eps_at_emitter() const { return eps_r[node(emitter_i, emitter_j)]; }
    double max_eps() const;
    // Cell measure of the delta regularization: 1/dx in 1D, 1/(dx*dy) in 2D.
    double inv_cell_measure() const { return dim == 1 ? 1.0 / dx : 1.0 / (dx * dy); }
};

// Stable time step dt = factor / (c * sqrt(sum 1/d_i^2)).
// Precondition: factor in (0, 1/sqrt(dim)].
double courant_dt(const Grid& g, double factor, const PhysicalConstants& k = {});

// Vacuum grid with the emitter at the center. extent is the interior span
// (per axis in 2D); absorbing cells are added outside it. resolution is in
// points per lambda0 in the densest medium (vacuum here).
Grid build_free_space(int dim, double extent, double resolution, double lambda0,
                      const BoundarySpec& boundary, double courant,
                      const PhysicalConstants& k = {});

// 1D vacuum cavity of length l_x bounded by PEC nodes, emitter centered.
Grid build_pec_cavity_1d(double l_x, double resolution, double lambda0,
                         double courant, const PhysicalConstants& k = {});

// 2D vacuum square of side l with PEC walls, emitter centered.
Grid build_square_cavity_2d(double l, double resolution, double lambda0,
                            double courant, const PhysicalConstants& k = {});

struct BraggParams {
    int mirror_cells = 25;         // unit cells per mirror (N)
    double n1 = 2.89;              // first mirror layer (AlAs)
    double n2 = 3.37;              // second mirror layer (GaAs)
    double cavity_index = 2.89;    // cavity layer refractive index
    double cavity_thickness = 0.0; // m; 0 selects lambda0/cavity_index
    double pad = 0.0;              // m of vacuum before each boundary; 0 -> 2*lambda0
    double dx_override = 0.0;      // m; 0 derives dx from resolution
};

// Symmetric quarter-wave stack cavity:
//   [pad][(n1 n2) x N][cavity][(n2 n1) x N][pad]
// with Mur boundaries. Layer thicknesses snap to whole cells and are
// reported in Grid::layers.
Grid build_bragg_cavity_1d(const BraggParams& p, double resolution, double lambda0,
                           double courant, const PhysicalConstants& k = {});

// Staircase-discretized dielectric disk centered in vacuum padding, UPML
// boundaries, emitter at the disk center.
Grid build_disk_2d(double radius, double eps_r_disk, double pad, double resolution,
                   double lambda0, const BoundarySpec& boundary, double courant,
                   const PhysicalConstants& k = {});

// Text matrix of eps_r per E node (one row per j) for visual inspection.
void write_eps_map(const std::string& path, const Grid& g);

} // namespace qedtd
