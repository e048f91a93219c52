#pragma once

#include "pssph/damage.hpp"
#include "pssph/material.hpp"
#include "pssph/math2d.hpp"

namespace pssph {

/// Plane-reduced isotropic Hooke matrix: s_xx = c11 e_xx + c12 e_yy,
/// s_yy = c12 e_xx + c11 e_yy, s_xy = 2 c33 e_xy.
struct Elastic2D {
    double c11 = 0.0;
    double c12 = 0.0;
    double c33 = 0.0;

    static Elastic2D from(const Material& mat, PlaneKind plane);

    Sym2 apply(const Sym2& strain) const {
        return {c11 * strain.xx + c12 * strain.yy,
                c12 * strain.xx + c11 * strain.yy,
                2.0 * c33 * strain.xy};
    }
};

/// Per-particle constitutive history.
struct DamageState {
    double kappa = 0.0;  ///< maximum equivalent strain ever attained
    double D = 0.0;      ///< current damage, pure function of kappa
};

struct StressUpdateResult {
    Sym2 rate;  ///< undamaged Jaumann stress rate used for the step
};

/// Advances the undamaged stress and accumulated strain by one step of the
/// rate-form Hooke's law with Jaumann spin correction, then refreshes the
/// damage history from the accumulated strain. When `freeze_damage` is set
/// the history variables are left untouched (gravity preload).
StressUpdateResult stress_update(Sym2& sigma, Sym2& strain, DamageState& dmg,
                                 const Sym2& strain_rate, double spin, double dt,
                                 const Elastic2D& elastic, const Material& mat,
                                 EquivalentStrain eq_kind, PlaneKind plane,
                                 bool freeze_damage = false);

inline Sym2 effective_stress(const Sym2& sigma_undamaged, double D) {
    return (1.0 - D) * sigma_undamaged;
}

}  // namespace pssph
