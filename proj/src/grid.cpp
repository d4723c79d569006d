// grid.cpp - Yee grid builders for the supported geometries
#include "qedtd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qedtd {

namespace {

// Snap a real cell count to the nearest even integer (>= 2) so that the
// center of the region falls exactly on an E node.
int snap_even(double cells) {
    int n = static_cast<int>(std::lround(cells / 2.0)) * 2;
    return std::max(n, 2);
}

void fill_uniform(Grid& g, double eps) {
    g.eps_r.assign(g.node_count(), eps);
    g.pec.assign(g.node_count(), 0);
}

} // namespace

double Grid::max_eps() const {
    return *std::max_element(eps_r.begin(), eps_r.end());
}

double courant_dt(const Grid& g, double factor, const PhysicalConstants& k) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(g.dim));
    if (!(factor > 0.0) || factor > bound + 1e-12)
        throw std::invalid_argument("courant factor must lie in (0, 1/sqrt(dim)]");
    double inv_sq = 1.0 / (g.dx * g.dx);
    if (g.dim == 2)
        inv_sq += 1.0 / (g.dy * g.dy);
    return factor / (k.c * std::sqrt(inv_sq));
}

Grid build_free_space(int dim, double extent, double resolution, double lambda0,
                      const BoundarySpec& boundary, double courant,
                      const PhysicalConstants& k) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("free space grid: dim must be 1 or 2");
    if (boundary.kind == BoundaryKind::PEC)
        throw std::invalid_argument("free space grid: absorbing boundary required");
    if (dim == 1 && boundary.kind != BoundaryKind::Mur1D)
        throw std::invalid_argument("free space grid: 1D uses Mur boundaries");
    if (dim == 2 && boundary.kind != BoundaryKind::UPML2D)
        throw std::invalid_argument("free space grid: 2D uses UPML boundaries");
    if (extent / 2.0 < lambda0)
        throw std::invalid_argument(
            "free space grid: emitter closer than one wavelength to the boundary");

    Grid g;
    g.dim = dim;
    g.dx = lambda0 / resolution;
    g.dy = g.dx;
    g.boundary = boundary;

    const int interior = snap_even(extent / g.dx);
    if (dim == 1) {
        g.nx = interior;
        g.ny = 0;
    } else {
        g.nx = interior + 2 * boundary.pml_cells;
        g.ny = g.nx;
    }
    fill_uniform(g, 1.0);
    g.emitter_i = g.nx / 2;
    g.emitter_j = (dim == 2) ? g.ny / 2 : 0;
    if (dim == 2) {
        // PEC backing behind the PML
        for (int i = 0; i <= g.nx; ++i) {
            g.pec[g.node(i, 0)] = 1;
            g.pec[g.node(i, g.ny)] = 1;
        }
        for (int j = 0; j <= g.ny; ++j) {
            g.pec[g.node(0, j)] = 1;
            g.pec[g.node(g.nx, j)] = 1;
        }
    }
    g.dt = courant_dt(g, courant, k);
    return g;
}

Grid build_pec_cavity_1d(double l_x, double resolution, double lambda0,
                         double courant, const PhysicalConstants& k) {
    if (!(l_x > 0))
        throw std::invalid_argument("pec cavity: l_x must be positive");
    Grid g;
    g.dim = 1;
    g.dx = lambda0 / resolution;
    g.nx = snap_even(l_x / g.dx);
    if (g.nx < 10)
        throw std::invalid_argument("pec cavity: l_x resolves to fewer than 10 cells");
    // Keep the requested physical length; dx absorbs the snap.
    g.dx = l_x / g.nx;
    g.dy = g.dx;
    g.boundary.kind = BoundaryKind::PEC;
    fill_uniform(g, 1.0);
    g.pec[g.node(0)] = 1;
    g.pec[g.node(g.nx)] = 1;
    g.emitter_i = g.nx / 2;
    g.dt = courant_dt(g, courant, k);
    return g;
}

Grid build_square_cavity_2d(double l, double resolution, double lambda0,
                            double courant, const PhysicalConstants& k) {
    if (!(l > 0))
        throw std::invalid_argument("square cavity: l must be positive");
    Grid g;
    g.dim = 2;
    g.dx = lambda0 / resolution;
    g.nx = snap_even(l / g.dx);
    if (g.nx < 10)
        throw std::invalid_argument("square cavity: l resolves to fewer than 10 cells");
    g.dx = l / g.nx;
    g.dy = g.dx;
    g.ny = g.nx;
    g.boundary.kind = BoundaryKind::PEC;
    fill_uniform(g, 1.0);
    for (int i = 0; i <= g.nx; ++i) {
        g.pec[g.node(i, 0)] = 1;
        g.pec[g.node(i, g.ny)] = 1;
    }
    for (int j = 0; j <= g.ny; ++j) {
        g.pec[g.node(0, j)] = 1;
        g.pec[g.node(g.nx, j)] = 1;
    }
    g.emitter_i = g.nx / 2;
    g.emitter_j = g.ny / 2;
    g.dt = courant_dt(g, courant, k);
    return g;
}

Grid build_bragg_cavity_1d(const BraggParams& p, double resolution, double lambda0,
                           double courant, const PhysicalConstants& k) {
    if (p.mirror_cells < 1)
        throw std::invalid_argument("bragg cavity: mirror_cells must be >= 1");
    if (!(p.n1 > 1.0) || !(p.n2 > 1.0))
        throw std::invalid_argument("bragg cavity: mirror indices must exceed 1");

    Grid g;
    g.dim = 1;
    const double n_max = std::max({p.n1, p.n2, p.cavity_index});
    g.dx = (p.dx_override > 0) ? p.dx_override : lambda0 / (resolution * n_max);
    g.dy = g.dx;
    g.boundary.kind = BoundaryKind::Mur1D;

    const double pad = (p.pad > 0) ? p.pad : 2.0 * lambda0;
    const double cavity_thickness =
        (p.cavity_thickness > 0) ? p.cavity_thickness : lambda0 / p.cavity_index;
    const double d1 = lambda0 / (4.0 * p.n1);
    const double d2 = lambda0 / (4.0 * p.n2);

    auto snapped = [&](const std::string& name, double index, double thickness,
                       bool even) {
        LayerRecord r;
        r.name = name;
        r.index = index;
        r.requested_m = thickness;
        r.cells = even ? snap_even(thickness / g.dx)
                       : std::max(1, static_cast<int>(std::lround(thickness / g.dx)));
        r.snapped_m = r.cells * g.dx;
        return r;
    };

    std::vector<LayerRecord> layers;
    layers.push_back(snapped("pad", 1.0, pad, false));
    for (int u = 0; u < p.mirror_cells; ++u) {
        layers.push_back(snapped("mirror_n1", p.n1, d1, false));
        layers.push_back(snapped("mirror_n2", p.n2, d2, false));
    }
    layers.push_back(snapped("cavity", p.cavity_index, cavity_thickness, true));
    for (int u = 0; u < p.mirror_cells; ++u) {
        layers.push_back(snapped("mirror_n2", p.n2, d2, false));
        layers.push_back(snapped("mirror_n1", p.n1, d1, false));
    }
    layers.push_back(snapped("pad", 1.0, pad, false));

    for (const auto& r : layers) {
        if (r.name != "pad" && r.cells < 4)
            throw std::invalid_argument("bragg cavity: layer '" + r.name +
                                        "' thinner than 4 cells at this resolution");
    }

    int total = 0;
    for (const auto& r : layers)
        total += r.cells;
    g.nx = total;
    fill_uniform(g, 1.0);

    // Material lookup is half-open per layer: the node on an interface
    // belongs to the layer that starts there.
    int cell0 = 0;
    int cavity_center = -1;
    for (const auto& r : layers) {
        const double eps = r.index * r.index;
        for (int i = cell0; i < cell0 + r.cells; ++i)
            g.eps_r[g.node(i)] = eps;
        if (r.name == "cavity")
            cavity_center = cell0 + r.cells / 2;
        cell0 += r.cells;
    }
    g.eps_r[g.node(g.nx)] = 1.0; // trailing pad owns the last node

    g.emitter_i = cavity_center;
    g.layers = std::move(layers);
    g.dt = courant_dt(g, courant, k);
    return g;
}

Grid build_disk_2d(double radius, double eps_r_disk, double pad, double resolution,
                   double lambda0, const BoundarySpec& boundary, double courant,
                   const PhysicalConstants& k) {
    if (!(radius > 0))
        throw std::invalid_argument("disk grid: radius must be positive");
    if (!(eps_r_disk >= 1.0))
        throw std::invalid_argument("disk grid: eps_r must be >= 1");
    if (boundary.kind != BoundaryKind::UPML2D)
        throw std::invalid_argument("disk grid: PML boundary required");

    Grid g;
    g.dim = 2;
    const double n_max = std::sqrt(eps_r_disk);
    g.dx = lambda0 / (resolution * n_max);
    g.dy = g.dx;
    g.boundary = boundary;

    if (pad < g.dx)
        throw std::invalid_argument("disk grid: PML overlaps the disk (pad too small)");

    const int interior = snap_even(2.0 * (radius + pad) / g.dx);
    g.nx = interior + 2 * boundary.pml_cells;
    g.ny = g.nx;
    fill_uniform(g, 1.0);
    g.emitter_i = g.nx / 2;
    g.emitter_j = g.ny / 2;

    // Staircase discretization: a node is dielectric iff its position lies
    // inside the circle. No subpixel averaging.
    const double cx = g.emitter_i * g.dx;
    const double cy = g.emitter_j * g.dy;
    const double r2 = radius * radius;
    for (int j = 0; j <= g.ny; ++j) {
        for (int i = 0; i <= g.nx; ++i) {
            const double x = i * g.dx - cx;
            const double y = j * g.dy - cy;
            if (x * x + y * y <= r2)
                g.eps_r[g.node(i, j)] = eps_r_disk;
        }
    }
    for (int i = 0; i <= g.nx; ++i) {
        g.pec[g.node(i, 0)] = 1;
        g.pec[g.node(i, g.ny)] = 1;
    }
    for (int j = 0; j <= g.ny; ++j) {
        g.pec[g.node(0, j)] = 1;
        g.pec[g.node(g.nx, j)] = 1;
    }
    g.dt = courant_dt(g, courant, k);
    return g;
}

void write_eps_map(const std::string& path, const Grid& g) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp)
        throw std::runtime_error("cannot write eps map '" + path + "'");
    std::fprintf(fp, "# eps_r per E node, %d x %d\n", g.nodes_x(), g.nodes_y());
    for (int j = 0; j < g.nodes_y(); ++j) {
        for (int i = 0; i < g.nodes_x(); ++i)
            std::fprintf(fp, "%s%.6g", i ? " " : "", g.eps_r[g.node(i, j)]);
        std::fputc('\n', fp);
    }
    std::fclose(fp);
}

} // namespace qedtd
