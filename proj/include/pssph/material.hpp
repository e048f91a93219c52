#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace pssph {

/// Elastic and fracture constants for one material.
struct Material {
    double E = 31.03e9;     ///< Young's modulus [Pa]
    double nu = 0.2;        ///< Poisson ratio
    double rho0 = 2643.0;   ///< reference density [kg/m^3]
    double f_t = 3.19e6;    ///< tensile strength [Pa], informational
    double f_c = 31.9e6;    ///< compressive strength [Pa], informational
    double G_f = 100.0;     ///< fracture energy [N/m]
    double eps0 = 1e-4;     ///< damage initiation strain
    double h_c = 0.5;       ///< softening characteristic length [m]

    double sound_speed() const { return std::sqrt(E / rho0); }
};

/// Throws ConfigError on hard invariant violations; returns human-readable
/// warnings for soft ones (eps0 vs f_t/E mismatch beyond 10%).
std::vector<std::string> validate_material(const Material& mat, const std::string& name);

}  // namespace pssph
