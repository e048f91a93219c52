#pragma once

#include <string>
#include <vector>

#include "pssph/math2d.hpp"

namespace pssph {

enum class SignalKind { none, sinusoid, accelerogram };

/// Prescribed base acceleration with exact closed-form velocity and
/// displacement integrals, so kinematically driven particles track the
/// signal without integration drift. Sinusoid amplitude and accelerogram
/// samples are in g units; `acceleration` and the integrals are in SI.
struct ExcitationSignal {
    SignalKind kind = SignalKind::none;

    // sinusoid: a(t) = amplitude*g * sin(2*pi*t/period) along direction
    double amplitude_g = 0.0;
    double period_s = 1.0;
    Vec2 direction{1.0, 0.0};

    // accelerogram: per-sample (time, horizontal g, vertical g), strictly
    // increasing times; linear interpolation between samples, zero beyond.
    std::vector<double> times;
    std::vector<Vec2> samples_g;

    double gravity = 9.81;

    /// Validates fields and precomputes the accelerogram prefix integrals.
    /// Call once after filling the fields (load_accelerogram does).
    void finalize();

    Vec2 acceleration(double t) const;  ///< m/s^2
    Vec2 velocity(double t) const;      ///< m/s, integral from 0
    Vec2 displacement(double t) const;  ///< m, double integral from 0

    /// End of the sampled record; 0 for none, +inf for a sinusoid.
    double record_end() const;

  private:
    std::vector<Vec2> vel_at_sample_;   // exact velocity at each sample time
    std::vector<Vec2> disp_at_sample_;  // exact displacement at each sample time
};

/// Reads a comma-separated accelerogram: `time_s, horiz_g[, vert_g]` per
/// line, optional header (detected by a non-numeric first token). Values are
/// in g units.
ExcitationSignal load_accelerogram(const std::string& path, double gravity = 9.81);

}  // namespace pssph
