#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pbandit/environment.hpp"
#include "pbandit/policy.hpp"

namespace pbandit {

struct RecordGrid {
    enum class Kind { EveryStep, LogSpaced };
    Kind kind = Kind::EveryStep;
    int points = 0;

    static RecordGrid every_step() noexcept { return {}; }
    static RecordGrid log_spaced(int points) noexcept { return {Kind::LogSpaced, points}; }

    friend bool operator==(const RecordGrid&, const RecordGrid&) = default;
};

/// EveryStep up to 10^4 rounds, LogSpaced(200) beyond.
RecordGrid default_grid(std::int64_t horizon) noexcept;

/// Recorded rounds, ascending, always containing 1 and the horizon.
std::vector<std::int64_t> time_points(const RecordGrid& grid, std::int64_t horizon);

struct ExperimentConfig {
    std::string name;
    std::vector<ArmSpec> specs;
    std::vector<PolicyConfig> policies;
    std::int64_t horizon = 1;
    std::int64_t trajectories = 1;
    std::uint64_t base_seed = 0;
    RecordGrid grid;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws UsageError naming the offending field.
void validate(const ExperimentConfig& config);

struct RegretTrace {
    std::string label;
    std::vector<std::int64_t> times;
    std::vector<double> mean_regret;
    std::vector<double> std_error;
    std::int64_t trajectories = 0;
};

/// Called after every round with the round number, the arms played and the outcome.
using RoundObserver = std::function<void(std::int64_t round, const ArmSet& selected, const StepOutcome& outcome)>;

/// Plays one trajectory of `horizon` rounds on a stream seeded with `seed`.
/// Round 1 plays every arm; round t + 1 plays the policy's selection after t.
/// Returns the cumulative regret after the final round.
double play(std::span<const ArmSpec> specs, const PolicyConfig& policy, std::int64_t horizon, std::uint64_t seed,
            const RoundObserver& observer = {});

/// Cumulative regret at the config's recorded time points for one
/// (policy, trajectory) pair, on the stream derive_seed(base_seed, policy_index, trajectory_index).
std::vector<double> run_trajectory(const ExperimentConfig& config, std::size_t policy_index,
                                   std::int64_t trajectory_index);

/// Averages every policy over all trajectories. Output does not depend on `workers`.
std::vector<RegretTrace> run_experiment(const ExperimentConfig& config, unsigned workers = 1);

}  // namespace pbandit
