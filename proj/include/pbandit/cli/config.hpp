#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "pbandit/errors.hpp"
#include "pbandit/simulate.hpp"

namespace pbandit::cli {

/// Parse failure; what() reads "<source>:<line>: <message>".
class ConfigError : public UsageError {
public:
    ConfigError(const std::string& source, int line, const std::string& message);
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Line-oriented experiment description:
///
///   # comment
///   [scenario]
///   name = my-scenario
///
///   [arm]                      one block per arm, in arm order
///   family = bernoulli         bernoulli | poisson | exponential | gaussian
///   mean = 0.1
///   threshold = 0.2
///   lambda = 3                 clients ~ 1 + Poisson(lambda); or `clients = k` for a constant k
///   variance = 1               gaussian only
///   scale = 1                  optional reward scale
///
///   [run]
///   horizon = 5000
///   trajectories = 1000
///   seed = 42
///   grid = every | log:200
///
///   [policy]                   one block per policy; `run` needs at least one
///   kind = kl-ucb              see policy_key()
///   c = 3
///   bound = 1                  required for bounded-reward kinds only
///   prior = jeffreys | uniform | custom:A,B
///   label = name-in-csv
///
/// Unknown sections and keys are rejected.
ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig parse_config_file(const std::filesystem::path& path);

}  // namespace pbandit::cli
