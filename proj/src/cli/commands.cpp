#include "pbandit/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <thread>

#include "pbandit/bounds.hpp"
#include "pbandit/cli/config.hpp"
#include "pbandit/cli/presets.hpp"
#include "pbandit/cli/report.hpp"
#include "pbandit/errors.hpp"
#include "pbandit/simulate.hpp"

namespace pbandit::cli {
namespace {

// Loads either a preset (with its roster) or a config file. Returns the
// preset's reward bound when one was used.
std::optional<double> load(const std::string& preset, const std::string& config_path, ExperimentConfig& config) {
    if (!preset.empty() && !config_path.empty()) {
        throw UsageError("give either a preset or --config, not both");
    }
    if (!config_path.empty()) {
        config = parse_config_file(config_path);
        return std::nullopt;
    }
    if (preset.empty()) {
        throw UsageError("a preset name or --config PATH is required");
    }
    const ScenarioPreset* found = find_preset(preset);
    if (found == nullptr) {
        throw UsageError("unknown preset '" + preset + "' (try: bernoulli, poisson, poisson-sharp)");
    }
    config = preset_config(*found);
    return found->reward_bound;
}

std::vector<PolicyConfig> pick_policies(const std::string& list, const ExperimentConfig& config,
                                        std::optional<double> preset_bound) {
    std::vector<PolicyConfig> out;
    std::stringstream stream(list);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) {
            continue;
        }
        const PolicyConfig* match = nullptr;
        for (const PolicyConfig& policy : config.policies) {
            if (policy.display_label() == item) {
                match = &policy;
            }
        }
        if (match != nullptr) {
            out.push_back(*match);
            continue;
        }
        const auto kind = parse_policy_kind(item);
        if (!kind) {
            throw UsageError("policies: unknown policy '" + item + "'");
        }
        if (needs_reward_bound(*kind) && !preset_bound) {
            throw UsageError("policies: '" + item + "' needs a reward bound; declare it in a [policy] block");
        }
        out.push_back(default_policy(*kind, preset_bound.value_or(1.0)));
    }
    if (out.empty()) {
        throw UsageError("policies: empty list");
    }
    return out;
}

}  // namespace

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
    ExperimentConfig config;
    try {
        const std::optional<double> preset_bound = load(options.preset, options.config_path, config);
        if (options.desk_scale) {
            config.horizon = kDeskHorizon;
            config.trajectories = kDeskTrajectories;
        }
        if (options.horizon) {
            if (*options.horizon < 1) throw UsageError("horizon: must be >= 1");
            config.horizon = *options.horizon;
        }
        if (options.trajectories) {
            if (*options.trajectories < 1) throw UsageError("trajectories: must be >= 1");
            config.trajectories = *options.trajectories;
        }
        if (options.seed) {
            config.base_seed = *options.seed;
        }
        if (options.policies) {
            config.policies = pick_policies(*options.policies, config, preset_bound);
        }
        if (options.config_path.empty() || options.desk_scale || options.horizon) {
            config.grid = default_grid(config.horizon);
        }
        validate(config);
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (options.out_path.empty()) {
        write_csv(out, config, run_experiment(config, std::max(1u, options.workers)));
        out.flush();
        return out ? kExitOk : kExitIo;
    }
    // Open first so a bad path fails before any simulation.
    std::ofstream file(options.out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open " << options.out_path << " for writing\n";
        return kExitIo;
    }
    write_csv(file, config, run_experiment(config, std::max(1u, options.workers)));
    file.close();
    if (!file) {
        err << "error: failed writing " << options.out_path << '\n';
        return kExitIo;
    }
    return kExitOk;
}

int cmd_bounds(const std::string& preset, const std::string& config_path, std::ostream& out, std::ostream& err) {
    ExperimentConfig config;
    try {
        load(preset, config_path, config);
        const BoundReport report = bound_report(config.specs);
        write_bound_table(out, config.name.empty() ? config_path : config.name, config.specs, report);
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_scenarios(const std::optional<std::string>& name, std::ostream& out, std::ostream& err) {
    if (name) {
        const ScenarioPreset* preset = find_preset(*name);
        if (preset == nullptr) {
            err << "error: unknown preset '" << *name << "'\n";
            return kExitUsage;
        }
        write_preset(out, *preset);
        return kExitOk;
    }
    for (const ScenarioPreset& preset : presets()) {
        write_preset(out, preset);
    }
    return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Profitable-bandit policies: regret simulation and asymptotic bounds", "pbandit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    RunOptions run;
    run.workers = std::max(1u, std::thread::hardware_concurrency());
    std::int64_t horizon = 0;
    std::int64_t trajectories = 0;
    std::uint64_t seed = 0;
    std::string policies;
    auto* run_cmd = app.add_subcommand("run", "Simulate policies and write regret traces as CSV");
    run_cmd->add_option("preset", run.preset, "Preset name: bernoulli, poisson, poisson-sharp");
    run_cmd->add_option("--config", run.config_path, "Experiment config file");
    auto* horizon_opt = run_cmd->add_option("--horizon", horizon, "Number of rounds T");
    auto* traj_opt = run_cmd->add_option("--trajectories", trajectories, "Independent trajectories per policy");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Base seed");
    auto* policies_opt = run_cmd->add_option("--policies", policies, "Comma-separated policy keys or labels");
    run_cmd->add_flag("--desk-scale", run.desk_scale, "T = 5000 and 1000 trajectories");
    run_cmd->add_option("--workers", run.workers, "Worker threads (never changes the output)");
    run_cmd->add_option("--out", run.out_path, "Write CSV here instead of stdout");

    std::string bounds_preset;
    std::string bounds_config;
    auto* bounds_cmd = app.add_subcommand("bounds", "Asymptotic lower and upper regret slopes");
    bounds_cmd->add_option("preset", bounds_preset, "Preset name");
    bounds_cmd->add_option("--config", bounds_config, "Experiment config file");

    std::string scenario_name;
    auto* scenarios_cmd = app.add_subcommand("scenarios", "List the built-in scenario presets");
    auto* name_opt = scenarios_cmd->add_option("--name", scenario_name, "Show one preset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run_cmd->parsed()) {
        if (*horizon_opt) run.horizon = horizon;
        if (*traj_opt) run.trajectories = trajectories;
        if (*seed_opt) run.seed = seed;
        if (*policies_opt) run.policies = policies;
        return cmd_run(run, out, err);
    }
    if (bounds_cmd->parsed()) {
        return cmd_bounds(bounds_preset, bounds_config, out, err);
    }
    return cmd_scenarios(*name_opt ? std::optional<std::string>(scenario_name) : std::nullopt, out, err);
}

}  // namespace pbandit::cli
