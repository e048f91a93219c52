#include "pssph/material.hpp"

#include <cmath>
#include <sstream>

#include "pssph/errors.hpp"

namespace pssph {

std::vector<std::string> validate_material(const Material& mat, const std::string& name) {
    auto fail = [&](const char* what) {
        throw ConfigError("material '" + name + "': " + what);
    };
    if (!(mat.E > 0.0)) fail("E must be positive");
    if (!(mat.nu >= 0.0 && mat.nu < 0.5)) fail("nu must be in [0, 0.5)");
    if (!(mat.rho0 > 0.0)) fail("rho0 must be positive");
    if (!(mat.G_f > 0.0)) fail("G_f must be positive");
    if (!(mat.eps0 > 0.0)) fail("eps0 must be positive");
    if (!(mat.h_c > 0.0)) fail("h_c must be positive");

    std::vector<std::string> warnings;
    const double eps_ft = mat.f_t / mat.E;
    if (std::abs(mat.eps0 - eps_ft) > 0.1 * eps_ft) {
        std::ostringstream os;
        os << "material '" << name << "': eps0 = " << mat.eps0
           << " differs from f_t/E = " << eps_ft << " by more than 10%";
        warnings.push_back(os.str());
    }
    return warnings;
}

}  // namespace pssph
