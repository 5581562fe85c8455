#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "pbandit/bounds.hpp"
#include "pbandit/cli/presets.hpp"
#include "pbandit/simulate.hpp"

namespace pbandit::cli {

inline constexpr std::string_view kVersion = "1.0.0";

/// 17 significant digits, '.' separator, locale independent.
std::string format_number(double value);
/// Shortest representation that reads back to the same double.
std::string format_short(double value);

std::string describe(const ArmSpec& spec);
std::string describe(const PolicyConfig& policy);

/// '#' metadata lines, then `policy,t,mean_regret,stderr` rows sorted by
/// (label, t). Lines end in '\n'.
void write_csv(std::ostream& out, const ExperimentConfig& config, std::span<const RegretTrace> traces);

void write_bound_table(std::ostream& out, std::string_view name, std::span<const ArmSpec> specs,
                       const BoundReport& report);

void write_preset(std::ostream& out, const ScenarioPreset& preset);

}  // namespace pbandit::cli
