#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbandit/environment.hpp"
#include "pbandit/policy.hpp"
#include "pbandit/simulate.hpp"

namespace pbandit::cli {

struct ScenarioPreset {
    std::string name;
    std::string summary;
    std::vector<ArmSpec> specs;
    std::vector<PolicyConfig> roster;
    double reward_bound;  // B handed to the bounded-reward policies
};

inline constexpr std::int64_t kFullHorizon = 10000;
inline constexpr std::int64_t kFullTrajectories = 10000;
inline constexpr std::int64_t kDeskHorizon = 5000;
inline constexpr std::int64_t kDeskTrajectories = 1000;

/// bernoulli, poisson, poisson-sharp, in that order.
const std::vector<ScenarioPreset>& presets();
const ScenarioPreset* find_preset(std::string_view name);

/// Full-scale experiment for a preset with seed 0 and the default record grid.
ExperimentConfig preset_config(const ScenarioPreset& preset);

}  // namespace pbandit::cli
