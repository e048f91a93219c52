#pragma once

#include <stdexcept>
#include <string>

namespace pssph {

/// Invalid scene, parameter, or precondition violation. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File system or parse failure. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite state detected during integration. CLI exit code 4.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& msg, long step = -1, long particle = -1)
        : std::runtime_error(msg), step(step), particle(particle) {}

    long step;
    long particle;
};

}  // namespace pssph
