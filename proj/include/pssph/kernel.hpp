#pragma once

#include <cmath>
#include <stdexcept>

#include "pssph/math2d.hpp"

namespace pssph {

/// Cubic B-spline smoothing kernel in 2D with compact support 2h.
///
/// W(q) = sigma * (1 - 1.5 q^2 + 0.75 q^3)   for q in [0, 1)
///        sigma * 0.25 (2 - q)^3             for q in [1, 2)
///        0                                  for q >= 2
/// with q = r / h and sigma = 10 / (7 pi h^2).
class CubicSplineKernel {
public:
    explicit CubicSplineKernel(double h)
        : h_(h), inv_h_(1.0 / h), sigma_(10.0 / (7.0 * M_PI * h * h)) {
        if (!(h > 0.0))
            throw std::invalid_argument("smoothing length must be positive");
    }

    double h() const { return h_; }
    double support_radius() const { return 2.0 * h_; }

    double value(double r) const {
        const double q = r * inv_h_;
        if (q < 1.0)
            return sigma_ * (1.0 - 1.5 * q * q + 0.75 * q * q * q);
        if (q < 2.0) {
            const double s = 2.0 - q;
            return sigma_ * 0.25 * s * s * s;
        }
        return 0.0;
    }

    /// dW/dr at distance r.
    double deriv(double r) const {
        const double q = r * inv_h_;
        if (q < 1.0)
            return sigma_ * inv_h_ * (-3.0 * q + 2.25 * q * q);
        if (q < 2.0) {
            const double s = 2.0 - q;
            return sigma_ * inv_h_ * (-0.75 * s * s);
        }
        return 0.0;
    }

    /// Gradient with respect to particle i for dx = x_i - x_j.
    /// Zero at dx = 0 (radial derivative vanishes at the origin).
    Vec2 gradient(Vec2 dx) const {
        const double r = norm(dx);
        if (r <= 0.0)
            return {0.0, 0.0};
        const double dwdr = deriv(r);
        return (dwdr / r) * dx;
    }

private:
    double h_;
    double inv_h_;
    double sigma_;
};

}  // namespace pssph
