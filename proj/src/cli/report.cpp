#include "pbandit/cli/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <iomanip>
#include <sstream>
#include <vector>

#include "pbandit/errors.hpp"
#include "pbandit/random.hpp"

namespace pbandit::cli {
namespace {

std::string clients_text(const ClientCountLaw& law) {
    if (law.kind() == ClientCountLaw::Kind::Constant) {
        return "constant(" + std::to_string(law.constant_count()) + ")";
    }
    return "shifted-poisson(" + format_short(law.lambda()) + ")";
}

std::string prior_text(const PriorKind& prior) {
    switch (prior.type) {
        case PriorType::Jeffreys:
            return "jeffreys";
        case PriorType::Uniform:
            return "uniform";
        case PriorType::Custom:
            return "custom:" + format_short(prior.a) + "," + format_short(prior.b);
    }
    return "?";
}

std::string grid_text(const RecordGrid& grid) {
    return grid.kind == RecordGrid::Kind::EveryStep ? "every" : "log:" + std::to_string(grid.points);
}

std::string cell(double value) {
    std::ostringstream s;
    s << std::setprecision(6) << value;
    return s.str();
}

}  // namespace

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::string format_short(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string describe(const ArmSpec& spec) {
    std::string out = "family=" + spec.dist.family().name();
    if (spec.dist.family().tag() == Family::Gaussian) {
        out += " variance=" + format_short(spec.dist.family().variance());
    }
    out += " mean=" + format_short(spec.dist.mean()) + " threshold=" + format_short(spec.threshold) +
           " clients=" + clients_text(spec.clients);
    if (spec.reward_scale != 1.0) {
        out += " scale=" + format_short(spec.reward_scale);
    }
    return out;
}

std::string describe(const PolicyConfig& policy) {
    std::string out = "kind=" + std::string(policy_key(policy.kind)) + " c=" + format_short(policy.c);
    if (policy.reward_bound) {
        out += " bound=" + format_short(*policy.reward_bound);
    }
    if (policy.kind == PolicyKind::BayesUcb || policy.kind == PolicyKind::Ts) {
        out += " prior=" + prior_text(policy.prior);
    }
    return out;
}

void write_csv(std::ostream& out, const ExperimentConfig& config, std::span<const RegretTrace> traces) {
    out << "# pbandit " << kVersion << '\n';
    out << "# generator: " << kGeneratorName << '\n';
    out << "# scenario: " << (config.name.empty() ? "(unnamed)" : config.name) << '\n';
    out << "# horizon: " << config.horizon << '\n';
    out << "# trajectories: " << config.trajectories << '\n';
    out << "# seed: " << config.base_seed << '\n';
    out << "# grid: " << grid_text(config.grid) << '\n';
    for (std::size_t a = 0; a < config.specs.size(); ++a) {
        out << "# arm " << a + 1 << ": " << describe(config.specs[a]) << '\n';
    }
    for (const PolicyConfig& policy : config.policies) {
        out << "# policy " << policy.display_label() << ": " << describe(policy) << '\n';
    }
    try {
        const BoundReport report = bound_report(config.specs);
        out << "# bounds: lower_slope=" << format_number(report.lower_slope)
            << " upper_slope=" << format_number(report.upper_slope) << '\n';
    } catch (const DomainError& e) {
        out << "# bounds: unavailable (" << e.what() << ")\n";
    }
    out << "policy,t,mean_regret,stderr\n";

    std::vector<const RegretTrace*> order;
    for (const RegretTrace& trace : traces) {
        order.push_back(&trace);
    }
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->label < b->label; });
    for (const RegretTrace* trace : order) {
        for (std::size_t i = 0; i < trace->times.size(); ++i) {
            out << trace->label << ',' << trace->times[i] << ',' << format_number(trace->mean_regret[i]) << ','
                << format_number(trace->std_error[i]) << '\n';
        }
    }
}

void write_bound_table(std::ostream& out, std::string_view name, std::span<const ArmSpec> specs,
                       const BoundReport& report) {
    out << "scenario: " << name << '\n';
    out << std::left << std::setw(5) << "arm" << std::setw(13) << "family" << std::setw(10) << "mean"
        << std::setw(11) << "threshold" << std::setw(11) << "gap" << std::setw(21) << "clients" << std::setw(12)
        << "kinf" << std::setw(12) << "pull_rate" << std::setw(13) << "slope_lower"
        << "slope_upper" << '\n';
    std::size_t next = 0;
    for (std::size_t a = 0; a < specs.size(); ++a) {
        const ArmSpec& spec = specs[a];
        out << std::setw(5) << a + 1 << std::setw(13) << spec.dist.family().name() << std::setw(10)
            << cell(spec.dist.mean()) << std::setw(11) << cell(spec.threshold) << std::setw(11) << cell(spec.gap())
            << std::setw(21) << clients_text(spec.clients);
        if (next < report.arms.size() && report.arms[next].arm == a) {
            const ArmBound& b = report.arms[next++];
            out << std::setw(12) << cell(b.kinf) << std::setw(12) << cell(b.pull_rate_lower) << std::setw(13)
                << cell(b.slope_lower) << cell(b.slope_upper);
        } else {
            out << "profitable";
        }
        out << '\n';
    }
    out << "lower regret slope: " << format_number(report.lower_slope) << '\n';
    out << "upper regret slope: " << format_number(report.upper_slope) << '\n';
}

void write_preset(std::ostream& out, const ScenarioPreset& preset) {
    out << preset.name << ": " << preset.summary << '\n';
    out << "  " << std::left << std::setw(5) << "arm" << std::setw(13) << "family" << std::setw(8) << "mean"
        << std::setw(11) << "threshold" << "clients" << '\n';
    for (std::size_t a = 0; a < preset.specs.size(); ++a) {
        const ArmSpec& spec = preset.specs[a];
        out << "  " << std::setw(5) << a + 1 << std::setw(13) << spec.dist.family().name() << std::setw(8)
            << format_short(spec.dist.mean()) << std::setw(11) << format_short(spec.threshold)
            << clients_text(spec.clients) << '\n';
    }
    out << "  policies:";
    for (const PolicyConfig& policy : preset.roster) {
        out << ' ' << policy.display_label();
    }
    out << "\n  reward bound: " << format_short(preset.reward_bound) << '\n';
}

}  // namespace pbandit::cli
