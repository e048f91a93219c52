#pragma once

#include <algorithm>
#include <cmath>

#include "pssph/material.hpp"
#include "pssph/math2d.hpp"

namespace pssph {

/// Damage stays strictly below 1 so degraded stiffness never underflows to
/// exactly zero; complete separation is handled by the spring network.
inline constexpr double kDamageCap = 1.0 - 1e-12;

/// Exponential-softening isotropic damage as a function of the maximum
/// equivalent strain ever attained. `length` is the regularization length
/// that makes the dissipated energy per unit area equal G_f.
inline double damage_value(double eps, const Material& mat, double length) {
    if (eps <= mat.eps0)
        return 0.0;
    const double k = mat.E * mat.eps0 * length / mat.G_f;
    const double d = 1.0 - (mat.eps0 / eps) * std::exp(-k * (eps - mat.eps0));
    return std::clamp(d, 0.0, kDamageCap);
}

enum class EquivalentStrain {
    principal,  ///< largest positive principal strain (Rankine type)
    von_mises,  ///< modified von Mises with k = f_c / f_t
};

enum class PlaneKind { stress, strain };

/// Largest positive principal strain of a 2D strain tensor.
inline double principal_equivalent_strain(const Sym2& strain) {
    return std::max(0.0, principal_values(strain).max);
}

/// Modified von Mises equivalent strain. Reduces to the axial strain under
/// uniaxial stress for any strength ratio k. The out-of-plane strain follows
/// the plane idealization.
double von_mises_equivalent_strain(const Sym2& strain, const Material& mat, PlaneKind plane);

inline double equivalent_strain(const Sym2& strain, const Material& mat,
                                EquivalentStrain kind, PlaneKind plane) {
    if (kind == EquivalentStrain::principal)
        return principal_equivalent_strain(strain);
    return von_mises_equivalent_strain(strain, mat, plane);
}

}  // namespace pssph
