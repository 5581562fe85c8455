#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace pbandit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
    std::string preset;
    std::string config_path;
    std::optional<std::int64_t> horizon;
    std::optional<std::int64_t> trajectories;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> policies;  // comma-separated keys or labels
    bool desk_scale = false;
    unsigned workers = 1;
    std::string out_path;  // empty: write to `out`
};

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_bounds(const std::string& preset, const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_scenarios(const std::optional<std::string>& name, std::ostream& out, std::ostream& err);

/// Parses argv (run | bounds | scenarios) and dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pbandit::cli
