// emitter.hpp - quantum emitter parameterization and dimensional normalization
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qedtd/constants.hpp"

namespace qedtd {

// Two-level emitter described by its transition wavelength, dipole matrix
// element and the cross section / axial length of the idealized low-D
// structure it is embedded in. The dipole moment is a signed scalar along
// the polarization axis; only d_eg^2 enters the dynamics.
struct EmitterSpec {
    double lambda0 = 1.5e-6;               // m, free-space transition wavelength
    double omega0 = 0.0;                   // rad/s, 2*pi*c/lambda0
    double d_eg = -1.342e-28;              // C m
    int dimensionality = 1;                // 1 or 2 for simulation, 3 for bookkeeping
    double cross_section_A = 4.652e-9 * 4.652e-9; // m^2 (1D emitter cross section)
    double axial_length_L = 4.652e-9;      // m   (2D emitter axial length)
    std::array<double, 2> position{0.0, 0.0}; // m, grid-space coordinates
    std::array<double, 3> polarization{0.0, 1.0, 0.0}; // unit vector

    double d_eg_sq() const { return d_eg * d_eg; }
};

inline EmitterSpec make_default_emitter(int dim, const PhysicalConstants& k = {}) {
    EmitterSpec e;
    e.dimensionality = dim;
    e.omega0 = 2.0 * std::numbers::pi * k.c / e.lambda0;
    e.polarization = (dim == 1) ? std::array<double, 3>{0.0, 1.0, 0.0}
                                : std::array<double, 3>{0.0, 0.0, 1.0};
    return e;
}

// Checks every EmitterSpec invariant; returns one message per violation.
inline std::vector<std::string> validate_emitter(const EmitterSpec& e,
                                                 const PhysicalConstants& k = {}) {
    std::vector<std::string> errors;
    if (!(e.lambda0 > 0))
        errors.push_back("emitter.lambda0: must be positive");
    if (e.dimensionality < 1 || e.dimensionality > 3)
        errors.push_back("emitter.dimensionality: must be 1, 2 or 3");
    if (!(e.cross_section_A > 0))
        errors.push_back("emitter.cross_section_A: must be positive");
    if (!(e.axial_length_L > 0))
        errors.push_back("emitter.axial_length_L: must be positive");
    if (e.lambda0 > 0) {
        const double w = 2.0 * std::numbers::pi * k.c / e.lambda0;
        if (std::abs(e.omega0 - w) > 1e-12 * w)
            errors.push_back("emitter.omega0: inconsistent with 2*pi*c/lambda0");
    }
    const double pnorm = std::sqrt(e.polarization[0] * e.polarization[0] +
                                   e.polarization[1] * e.polarization[1] +
                                   e.polarization[2] * e.polarization[2]);
    if (std::abs(pnorm - 1.0) > 1e-9)
        errors.push_back("emitter.polarization: must be a unit vector");
    return errors;
}

// Dimensional normalization of the point-source term:
// N_1 = 1/A, N_2 = 1/L, N_3 = 1. Units are 1/m^(3-D).
inline double normalization_factor(const EmitterSpec& e) {
    switch (e.dimensionality) {
    case 1: return 1.0 / e.cross_section_A;
    case 2: return 1.0 / e.axial_length_L;
    case 3: return 1.0;
    default: throw std::invalid_argument("normalization_factor: dimensionality");
    }
}

} // namespace qedtd
