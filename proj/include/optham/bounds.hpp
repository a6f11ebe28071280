// bounds.hpp: local-semicontinuity bound evaluator. The bound on an entropy
// characteristic f across states epsilon-close to rho in an f-specific
// metric is C * eps * S_min(1/eps) + D * h_env(eps), where S_min is the
// minimal-entropy value of this library's optimal construction at unit
// budget and h_env is the capped binary entropy envelope.
#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "optham/errors.hpp"
#include "optham/numeric.hpp"
#include "optham/optimal.hpp"
#include "optham/spectrum.hpp"

namespace optham {

// h_env(eps) = eta(eps) + eta(1-eps) on [0, 1/2], ln 2 above; nondecreasing.
inline double binary_entropy_envelope(double eps) {
  if (!(eps >= 0.0) || !(eps <= 1.0)) {
    throw OutOfRange("binary entropy envelope needs eps in [0,1]");
  }
  if (eps <= 0.5) return eta(eps) + eta(1.0 - eps);
  return std::numbers::ln2;
}

// Coefficient pair and closeness metric of one entropy characteristic.
struct CharacteristicPreset {
  std::string name;
  double C = 1.0;
  double D = 1.0;
  std::string metric_note;
};

// Catalog of supported characteristics, in the order of the public table.
inline const std::vector<CharacteristicPreset>& characteristic_presets() {
  static const std::vector<CharacteristicPreset> table = {
      {"von Neumann entropy", 1.0, 1.0, "half trace norm"},
      {"quantum conditional entropy of quantum-classical states", 1.0, 1.0,
       "half trace norm"},
      {"entanglement of formation", 1.0, 1.0, "one minus fidelity, square root"},
      {"quantum mutual information, commuting", 2.0, 2.0, "half trace norm"},
      {"quantum conditional mutual information, commuting", 2.0, 2.0,
       "half trace norm"},
      {"relative entropy of entanglement", 1.0, 1.0, "half trace norm"},
      {"quantum discord, measured A1, commuting", 1.0, 2.0,
       "half trace norm"},
      {"quantum discord, measured A2, commuting", 2.0, 2.0,
       "half trace norm"},
      {"one-way classical correlation, measured A1", 1.0, 2.0,
       "half trace norm"},
      {"one-way classical correlation, measured A2", 1.0, 2.0,
       "half trace norm"},
  };
  return table;
}

inline const CharacteristicPreset& find_preset(const std::string& name) {
  for (const auto& p : characteristic_presets()) {
    if (p.name == name) return p;
  }
  throw BadConfig("unknown characteristic preset: " + name);
}

// Optimal main term at unit budget: the minimal entropy reachable with
// sum(p_i h_i) <= 1 and mean energy 1/eps. eps in (0, 1].
inline double semicontinuity_main_term(const Spectrum& spec, double eps) {
  if (!(eps > 0.0) || !(eps <= 1.0)) {
    throw OutOfRange("main term needs eps in (0,1]");
  }
  return optimal_entropy(spec, 1.0, 1.0 / eps);
}

// C * eps * main(eps) + D * h_env(eps), nats.
inline double semicontinuity_bound(const Spectrum& spec, double eps,
                                   const CharacteristicPreset& preset) {
  double main = semicontinuity_main_term(spec, eps);
  return preset.C * eps * main + preset.D * binary_entropy_envelope(eps);
}

inline double semicontinuity_bound(const Spectrum& spec, double eps,
                                   const std::string& preset_name) {
  return semicontinuity_bound(spec, eps, find_preset(preset_name));
}

}  // namespace optham
