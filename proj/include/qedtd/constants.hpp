// constants.hpp - vacuum electromagnetic constants (SI)
#pragma once

#include <cmath>

namespace qedtd {

struct PhysicalConstants {
    double eps0 = 8.8541878128e-12;        // F/m
    double hbar = 1.054571817e-34;         // J s
    double c = 299792458.0;                // m/s
    // Derived so that c^2 * eps0 * mu0 == 1 to roundoff.
    double mu0 = 1.0 / (8.8541878128e-12 * 299792458.0 * 299792458.0); // H/m

    double impedance() const { return std::sqrt(mu0 / eps0); }
};

// Relative deviation of c^2*eps0*mu0 from unity; must stay below 1e-12.
inline double constants_consistency(const PhysicalConstants& k) {
    return std::abs(k.c * k.c * k.eps0 * k.mu0 - 1.0);
}

inline bool constants_valid(const PhysicalConstants& k) {
    return k.eps0 > 0 && k.mu0 > 0 && k.hbar > 0 && k.c > 0 &&
           constants_consistency(k) < 1e-12;
}

} // namespace qedtd
