#include "pbandit/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

#include "pbandit/cli/presets.hpp"

namespace pbandit::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Entry {
    std::string value;
    int line;
};

struct Block {
    std::string section;
    int line;
    std::map<std::string, Entry> entries;
};

class Parser {
public:
    explicit Parser(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(int line, const std::string& message) const { throw ConfigError(source_, line, message); }

    double number(const Block& block, const std::string& key) const {
        const Entry& e = block.entries.at(key);
        double value = 0.0;
        const char* begin = e.value.data();
        const char* end = begin + e.value.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end) {
            fail(e.line, key + ": expected a number, got '" + e.value + "'");
        }
        return value;
    }

    std::int64_t integer(const Block& block, const std::string& key) const {
        const Entry& e = block.entries.at(key);
        std::int64_t value = 0;
        const char* begin = e.value.data();
        const char* end = begin + e.value.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end) {
            fail(e.line, key + ": expected an integer, got '" + e.value + "'");
        }
        return value;
    }

    std::uint64_t unsigned_integer(const Block& block, const std::string& key) const {
        const Entry& e = block.entries.at(key);
        std::uint64_t value = 0;
        const char* begin = e.value.data();
        const char* end = begin + e.value.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end) {
            fail(e.line, key + ": expected a nonnegative integer, got '" + e.value + "'");
        }
        return value;
    }

    void allow(const Block& block, std::initializer_list<std::string_view> keys) const {
        for (const auto& [key, entry] : block.entries) {
            bool known = false;
            for (const auto k : keys) {
                known = known || key == k;
            }
            if (!known) {
                fail(entry.line, "unknown key '" + key + "' in [" + block.section + "]");
            }
        }
    }

    void require(const Block& block, std::initializer_list<std::string_view> keys) const {
        for (const auto k : keys) {
            if (!block.entries.contains(std::string(k))) {
                fail(block.line, "[" + block.section + "] is missing '" + std::string(k) + "'");
            }
        }
    }

    ArmSpec arm(const Block& block, std::size_t index) const {
        allow(block, {"family", "mean", "threshold", "lambda", "clients", "variance", "scale"});
        require(block, {"family", "mean", "threshold"});
        const Entry& family_entry = block.entries.at("family");
        const std::string& name = family_entry.value;
        const std::string where = "arm " + std::to_string(index + 1) + ": ";
        std::optional<FamilyKind> family;
        if (name == "bernoulli") family = FamilyKind::bernoulli();
        if (name == "poisson") family = FamilyKind::poisson();
        if (name == "exponential") family = FamilyKind::exponential();
        if (name == "gaussian") {
            if (!block.entries.contains("variance")) {
                fail(block.line, where + "gaussian arm needs 'variance'");
            }
            try {
                family = FamilyKind::gaussian(number(block, "variance"));
            } catch (const DomainError& e) {
                fail(block.entries.at("variance").line, where + "variance: " + e.what());
            }
        } else if (block.entries.contains("variance")) {
            fail(block.entries.at("variance").line, where + "variance only applies to gaussian arms");
        }
        if (!family) {
            fail(family_entry.line, where + "family: unknown family '" + name + "'");
        }

        const double mean = number(block, "mean");
        std::optional<Distribution> dist;
        try {
            dist.emplace(*family, mean);
        } catch (const DomainError& e) {
            fail(block.entries.at("mean").line, where + "mean: " + e.what());
        }

        if (block.entries.contains("lambda") && block.entries.contains("clients")) {
            fail(block.line, where + "give either 'lambda' or 'clients', not both");
        }
        std::optional<ClientCountLaw> clients;
        try {
            if (block.entries.contains("lambda")) {
                clients = ClientCountLaw::shifted_poisson(number(block, "lambda"));
            } else if (block.entries.contains("clients")) {
                clients = ClientCountLaw::constant(integer(block, "clients"));
            } else {
                clients = ClientCountLaw::constant(1);
            }
        } catch (const DomainError& e) {
            const std::string key = block.entries.contains("lambda") ? "lambda" : "clients";
            fail(block.entries.at(key).line, where + key + ": " + e.what());
        }

        const double threshold = number(block, "threshold");
        if (!std::isfinite(threshold)) {
            fail(block.entries.at("threshold").line, where + "threshold: must be finite");
        }
        double scale = 1.0;
        if (block.entries.contains("scale")) {
            scale = number(block, "scale");
            if (!(scale > 0.0) || !std::isfinite(scale)) {
                fail(block.entries.at("scale").line, where + "scale: must be positive");
            }
        }
        return ArmSpec{*dist, threshold, *clients, scale};
    }

    PolicyConfig policy(const Block& block) const {
        allow(block, {"kind", "c", "bound", "prior", "label"});
        require(block, {"kind"});
        const Entry& kind_entry = block.entries.at("kind");
        const auto kind = parse_policy_kind(kind_entry.value);
        if (!kind) {
            fail(kind_entry.line, "kind: unknown policy '" + kind_entry.value + "'");
        }
        PolicyConfig config = default_policy(*kind);
        config.reward_bound.reset();
        if (block.entries.contains("c")) {
            config.c = number(block, "c");
        }
        if (block.entries.contains("bound")) {
            config.reward_bound = number(block, "bound");
        } else if (needs_reward_bound(*kind)) {
            fail(block.line, "policy " + kind_entry.value + " needs 'bound'");
        }
        if (block.entries.contains("label")) {
            config.label = block.entries.at("label").value;
        }
        if (block.entries.contains("prior")) {
            const Entry& e = block.entries.at("prior");
            if (e.value == "jeffreys") {
                config.prior = PriorKind::jeffreys();
            } else if (e.value == "uniform") {
                config.prior = PriorKind::uniform();
            } else if (e.value.starts_with("custom:") && e.value.find(',') != std::string::npos) {
                const std::string body = e.value.substr(7);
                const auto comma = body.find(',');
                Block tmp{"policy", e.line, {}};
                tmp.entries["prior a"] = {std::string(trim(body.substr(0, comma))), e.line};
                tmp.entries["prior b"] = {std::string(trim(body.substr(comma + 1))), e.line};
                config.prior = PriorKind::custom(number(tmp, "prior a"), number(tmp, "prior b"));
            } else {
                fail(e.line, "prior: expected jeffreys, uniform or custom:A,B");
            }
        }
        try {
            validate(config);
        } catch (const UsageError& e) {
            fail(block.line, e.what());
        }
        return config;
    }

    ExperimentConfig parse(std::istream& in) {
        std::vector<Block> blocks;
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string_view line = raw;
            if (const auto hash = line.find('#'); hash != std::string_view::npos) {
                line = line.substr(0, hash);
            }
            line = trim(line);
            if (line.empty()) {
                continue;
            }
            if (line.front() == '[') {
                if (line.back() != ']') {
                    fail(line_no, "malformed section header");
                }
                const std::string section(trim(line.substr(1, line.size() - 2)));
                if (section != "scenario" && section != "arm" && section != "run" && section != "policy") {
                    fail(line_no, "unknown section [" + section + "]");
                }
                blocks.push_back({section, line_no, {}});
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                fail(line_no, "expected 'key = value'");
            }
            if (blocks.empty()) {
                fail(line_no, "key outside of any section");
            }
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (key.empty() || value.empty()) {
                fail(line_no, "expected 'key = value'");
            }
            if (!blocks.back().entries.emplace(key, Entry{value, line_no}).second) {
                fail(line_no, "duplicate key '" + key + "'");
            }
        }

        ExperimentConfig config;
        config.horizon = kFullHorizon;
        config.trajectories = kFullTrajectories;
        bool have_grid = false;
        bool seen_run = false;
        bool seen_scenario = false;
        for (const Block& block : blocks) {
            if (block.section == "scenario") {
                if (seen_scenario) fail(block.line, "duplicate [scenario] section");
                seen_scenario = true;
                allow(block, {"name"});
                if (block.entries.contains("name")) {
                    config.name = block.entries.at("name").value;
                }
            } else if (block.section == "arm") {
                config.specs.push_back(arm(block, config.specs.size()));
            } else if (block.section == "policy") {
                config.policies.push_back(policy(block));
            } else {
                if (seen_run) fail(block.line, "duplicate [run] section");
                seen_run = true;
                allow(block, {"horizon", "trajectories", "seed", "grid"});
                if (block.entries.contains("horizon")) {
                    config.horizon = integer(block, "horizon");
                    if (config.horizon < 1) fail(block.entries.at("horizon").line, "horizon: must be >= 1");
                }
                if (block.entries.contains("trajectories")) {
                    config.trajectories = integer(block, "trajectories");
                    if (config.trajectories < 1) {
                        fail(block.entries.at("trajectories").line, "trajectories: must be >= 1");
                    }
                }
                if (block.entries.contains("seed")) {
                    config.base_seed = unsigned_integer(block, "seed");
                }
                if (block.entries.contains("grid")) {
                    const Entry& e = block.entries.at("grid");
                    have_grid = true;
                    if (e.value == "every") {
                        config.grid = RecordGrid::every_step();
                    } else if (e.value.starts_with("log:")) {
                        Block tmp{"run", e.line, {{"grid points", {e.value.substr(4), e.line}}}};
                        const std::int64_t points = integer(tmp, "grid points");
                        if (points < 2 || points > 1000000) fail(e.line, "grid: log grid needs at least 2 points");
                        config.grid = RecordGrid::log_spaced(static_cast<int>(points));
                    } else {
                        fail(e.line, "grid: expected 'every' or 'log:N'");
                    }
                }
            }
        }
        if (config.specs.empty()) {
            fail(line_no, "no [arm] blocks");
        }
        if (!have_grid) {
            config.grid = default_grid(config.horizon);
        }
        try {
            // Policy-less files are fine for `bounds`; `run` rejects them later.
            if (!config.policies.empty()) validate(config);
        } catch (const UsageError& e) {
            fail(line_no, e.what());
        }
        return config;
    }

private:
    std::string source_;
};

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : UsageError(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

ExperimentConfig parse_config(std::istream& in, const std::string& source) { return Parser(source).parse(in); }

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open config file " + path.string());
    }
    return parse_config(in, path.string());
}

}  // namespace pbandit::cli
