#pragma once

#include <cstdint>
#include <stdexcept>

#include "pf/simulator.hpp"

namespace pf {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenOptions {
  bool allow_delegated = false;
  bool interior_multiplicity = true;  // occasionally stack two interior orbits
  int max_attempts = 2000;
};

// solvable scenario with |R| = n and ρ(F) = rho_f; R is in general position
Scenario generate_scenario(int n, int rho_f, std::uint64_t seed, const GenOptions& opt = {});

}  // namespace pf
