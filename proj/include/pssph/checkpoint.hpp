#pragma once

#include <string>

#include "pssph/dynamics.hpp"

namespace pssph {

/// Raw binary dump of the full evolving state (particles, bonds, energy
/// ledger, failure events, cached accelerations). Restoring into a solver
/// built from the same scene continues the trajectory bit-identically.
void write_checkpoint(const Solver& solver, const std::string& path);

/// Loads a checkpoint into `solver`; throws IoError on format/shape mismatch.
void read_checkpoint(Solver& solver, const std::string& path);

}  // namespace pssph
