#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quench/fieldtheory.hpp"

// Named parameter sets for the figure-style scenarios and the 2024
// experimental condensate parameters.
namespace quench::presets {

struct Preset {
  std::string name;
  std::string description;
  // lattice-model parameters (valid unless condensate is set)
  double omega_sq = 0.0;
  double kappa = 0.0;
  std::vector<int> chain_sizes;  // only for chain presets
  std::optional<fieldtheory::CondensateParams> condensate;
};

const std::vector<Preset>& all();
std::optional<Preset> find(const std::string& name);

}  // namespace quench::presets
