#include "pssph/constitutive.hpp"

#include <algorithm>
#include <cmath>

namespace pssph {

Elastic2D Elastic2D::from(const Material& mat, PlaneKind plane) {
    Elastic2D e;
    const double E = mat.E;
    const double nu = mat.nu;
    if (plane == PlaneKind::stress) {
        const double c = E / (1.0 - nu * nu);
        e.c11 = c;
        e.c12 = c * nu;
    } else {
        const double c = E / ((1.0 + nu) * (1.0 - 2.0 * nu));
        e.c11 = c * (1.0 - nu);
        e.c12 = c * nu;
    }
    e.c33 = E / (2.0 * (1.0 + nu));
    return e;
}

double von_mises_equivalent_strain(const Sym2& strain, const Material& mat, PlaneKind plane) {
    const double nu = mat.nu;
    const double ezz = plane == PlaneKind::stress
                           ? -nu / (1.0 - nu) * (strain.xx + strain.yy)
                           : 0.0;
    const double k = mat.f_c / mat.f_t;
    const double I1 = strain.xx + strain.yy + ezz;
    const double m = I1 / 3.0;
    const double exx = strain.xx - m;
    const double eyy = strain.yy - m;
    const double ezz_d = ezz - m;
    const double J2 = 0.5 * (exx * exx + eyy * eyy + ezz_d * ezz_d) + strain.xy * strain.xy;
    const double a = (k - 1.0) * I1 / (1.0 - 2.0 * nu);
    const double eq = a / (2.0 * k) +
                      std::sqrt(a * a + 12.0 * k * J2 / ((1.0 + nu) * (1.0 + nu))) / (2.0 * k);
    return std::max(0.0, eq);
}

StressUpdateResult stress_update(Sym2& sigma, Sym2& strain, DamageState& dmg,
                                 const Sym2& strain_rate, double spin, double dt,
                                 const Elastic2D& elastic, const Material& mat,
                                 EquivalentStrain eq_kind, PlaneKind plane,
                                 bool freeze_damage) {
    const Sym2 rate = elastic.apply(strain_rate) + spin_rotation_rate(sigma, spin);
    sigma += dt * rate;
    strain += dt * (strain_rate + spin_rotation_rate(strain, spin));

    if (!freeze_damage) {
        const double eps_eq = equivalent_strain(strain, mat, eq_kind, plane);
        if (eps_eq > dmg.kappa) {
            dmg.kappa = eps_eq;
            dmg.D = damage_value(dmg.kappa, mat, mat.h_c);
        }
    }
    return {rate};
}

}  // namespace pssph
