#include "quench/presets.hpp"

#include <cmath>

namespace quench::presets {

namespace {

std::vector<Preset> make_presets() {
  std::vector<Preset> out;
  out.push_back({"marginals", "two-rotor momentum marginals", 5.0, 10.0, {}, {}});
  out.push_back({"strong-coupling", "compact vs non-compact entropy growth",
                 10.0, 100.0, {}, {}});
  out.push_back({"heavy-onsite", "heavy on-site regime", 100.0, 10.0, {}, {}});
  out.push_back(
      {"light-weak", "light, weakly coupled regime", 1.5, 0.5, {}, {}});
  out.push_back(
      {"light-strong", "light, strongly coupled regime", 0.1, 100.0, {}, {}});
  out.push_back(
      {"chains", "chain half-system entropies", 1.5, 0.5, {2, 3, 4}, {}});

  fieldtheory::CondensateParams cond{};
  cond.length = 49e-6;           // m
  cond.density_1d = 70e6;        // 1/m
  cond.g_1d = 8.594e-39;         // kg m^3 / s^2
  cond.mass = 1.433e-25;         // kg (Rb-87)
  cond.tunnel_rate = 2.0 * std::acos(-1.0) * 0.76;  // 1/s
  cond.temperature = 49e-9;      // K
  Preset experiment{};
  experiment.name = "experiment-2024";
  experiment.description = "coupled quasi-condensate experiment parameters";
  experiment.condensate = cond;
  out.push_back(experiment);
  return out;
}

}  // namespace

const std::vector<Preset>& all() {
  static const std::vector<Preset> presets = make_presets();
  return presets;
}

std::optional<Preset> find(const std::string& name) {
  for (const auto& p : all())
    if (p.name == name) return p;
  return std::nullopt;
}

}  // namespace quench::presets
