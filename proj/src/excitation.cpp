#include "pssph/excitation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "pssph/errors.hpp"

namespace pssph {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void ExcitationSignal::finalize() {
    if (kind == SignalKind::sinusoid && !(period_s > 0.0))
        throw ConfigError("excitation: sinusoid period must be positive");
    const double dirlen = norm(direction);
    if (kind == SignalKind::sinusoid) {
        if (!(dirlen > 0.0)) throw ConfigError("excitation: direction must be nonzero");
        direction = (1.0 / dirlen) * direction;
    }
    if (kind != SignalKind::accelerogram) return;

    if (times.size() != samples_g.size() || times.empty())
        throw ConfigError("excitation: accelerogram needs matching, nonempty samples");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1]))
            throw ConfigError("excitation: accelerogram times must be strictly increasing");
    }
    // Exact trapezoid integrals of the piecewise-linear record at each
    // sample; segment evaluation continues from these anchors.
    vel_at_sample_.assign(times.size(), Vec2{0.0, 0.0});
    disp_at_sample_.assign(times.size(), Vec2{0.0, 0.0});
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double dt = times[k] - times[k - 1];
        const Vec2 a0 = gravity * samples_g[k - 1];
        const Vec2 a1 = gravity * samples_g[k];
        vel_at_sample_[k] = vel_at_sample_[k - 1] + 0.5 * dt * (a0 + a1);
        disp_at_sample_[k] = disp_at_sample_[k - 1] + dt * vel_at_sample_[k - 1] +
                             dt * dt * ((1.0 / 3.0) * a0 + (1.0 / 6.0) * a1);
    }
}

Vec2 ExcitationSignal::acceleration(double t) const {
    switch (kind) {
        case SignalKind::none:
            return Vec2{0.0, 0.0};
        case SignalKind::sinusoid:
            return (amplitude_g * gravity * std::sin(kTwoPi * t / period_s)) * direction;
        case SignalKind::accelerogram: {
            if (t < times.front() || t > times.back()) return Vec2{0.0, 0.0};
            const auto it = std::upper_bound(times.begin(), times.end(), t);
            if (it == times.begin()) return gravity * samples_g.front();
            const std::size_t k = static_cast<std::size_t>(it - times.begin());
            if (k >= times.size()) return gravity * samples_g.back();
            const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
            return gravity * ((1.0 - w) * samples_g[k - 1] + w * samples_g[k]);
        }
    }
    return Vec2{0.0, 0.0};
}

Vec2 ExcitationSignal::velocity(double t) const {
    switch (kind) {
        case SignalKind::none:
            return Vec2{0.0, 0.0};
        case SignalKind::sinusoid: {
            const double w = kTwoPi / period_s;
            return (amplitude_g * gravity / w * (1.0 - std::cos(w * t))) * direction;
        }
        case SignalKind::accelerogram: {
            if (t <= times.front()) return Vec2{0.0, 0.0};
            if (t >= times.back()) return vel_at_sample_.back();
            const auto it = std::upper_bound(times.begin(), times.end(), t);
            const std::size_t k = static_cast<std::size_t>(it - times.begin());
            const double seg = times[k] - times[k - 1];
            const double dt = t - times[k - 1];
            const Vec2 a0 = gravity * samples_g[k - 1];
            const Vec2 slope = (1.0 / seg) * (gravity * samples_g[k] - a0);
            return vel_at_sample_[k - 1] + dt * a0 + (0.5 * dt * dt) * slope;
        }
    }
    return Vec2{0.0, 0.0};
}

Vec2 ExcitationSignal::displacement(double t) const {
    switch (kind) {
        case SignalKind::none:
            return Vec2{0.0, 0.0};
        case SignalKind::sinusoid: {
            const double w = kTwoPi / period_s;
            const double c = amplitude_g * gravity / w;
            return (c * t - c / w * std::sin(w * t)) * direction;
        }
        case SignalKind::accelerogram: {
            if (t <= times.front()) return Vec2{0.0, 0.0};
            if (t >= times.back()) {
                const double tail = t - times.back();
                return disp_at_sample_.back() + tail * vel_at_sample_.back();
            }
            const auto it = std::upper_bound(times.begin(), times.end(), t);
            const std::size_t k = static_cast<std::size_t>(it - times.begin());
            const double seg = times[k] - times[k - 1];
            const double dt = t - times[k - 1];
            const Vec2 a0 = gravity * samples_g[k - 1];
            const Vec2 slope = (1.0 / seg) * (gravity * samples_g[k] - a0);
            return disp_at_sample_[k - 1] + dt * vel_at_sample_[k - 1] +
                   (0.5 * dt * dt) * a0 + (dt * dt * dt / 6.0) * slope;
        }
    }
    return Vec2{0.0, 0.0};
}

double ExcitationSignal::record_end() const {
    switch (kind) {
        case SignalKind::none:
            return 0.0;
        case SignalKind::sinusoid:
            return std::numeric_limits<double>::infinity();
        case SignalKind::accelerogram:
            return times.back();
    }
    return 0.0;
}

namespace {

bool numeric_token(const std::string& tok) {
    std::size_t pos = 0;
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos == tok.size()) return false;
    char* end = nullptr;
    std::strtod(tok.c_str() + pos, &end);
    return end != tok.c_str() + pos;
}

}  // namespace

ExcitationSignal load_accelerogram(const std::string& path, double gravity) {
    std::ifstream in(path);
    if (!in) throw IoError("accelerogram: cannot open '" + path + "'");

    ExcitationSignal sig;
    sig.kind = SignalKind::accelerogram;
    sig.gravity = gravity;

    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Strip comments and blank lines.
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;

        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> fields;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);
        if (fields.empty()) continue;

        if (!numeric_token(fields[0])) {
            if (lineno == 1 || sig.times.empty()) continue;  // header line
            throw ConfigError("accelerogram: non-numeric record at line " +
                              std::to_string(lineno) + " of '" + path + "'");
        }
        if (fields.size() < 2)
            throw ConfigError("accelerogram: need `time, horiz[, vert]` at line " +
                              std::to_string(lineno) + " of '" + path + "'");
        const double t = std::stod(fields[0]);
        const double ax = std::stod(fields[1]);
        const double ay = fields.size() >= 3 && numeric_token(fields[2]) ? std::stod(fields[2])
                                                                         : 0.0;
        sig.times.push_back(t);
        sig.samples_g.push_back(Vec2{ax, ay});
    }
    if (sig.times.empty())
        throw ConfigError("accelerogram: no records in '" + path + "'");
    for (std::size_t k = 1; k < sig.times.size(); ++k) {
        if (!(sig.times[k] > sig.times[k - 1]))
            throw ConfigError("accelerogram: times not strictly increasing near record " +
                              std::to_string(k + 1) + " of '" + path + "'");
    }
    sig.finalize();
    return sig;
}

}  // namespace pssph
