#include "pbandit/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "pbandit/errors.hpp"
#include "pbandit/random.hpp"

namespace pbandit {
namespace {

// Trajectories per aggregation block. Part of the output contract: the reduction
// tree over blocks is fixed by this constant, not by the worker count.
constexpr std::int64_t kBlockSize = 64;

struct BlockStats {
    double count = 0.0;
    std::vector<double> sum;
    std::vector<double> m2;
};

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double total = 0.0;
        for (const double v : values) {
            total += v;
        }
        return total;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

BlockStats merge(const BlockStats& a, const BlockStats& b) {
    BlockStats out;
    out.count = a.count + b.count;
    out.sum.resize(a.sum.size());
    out.m2.resize(a.sum.size());
    for (std::size_t i = 0; i < a.sum.size(); ++i) {
        out.sum[i] = a.sum[i] + b.sum[i];
        const double delta = b.sum[i] / b.count - a.sum[i] / a.count;
        out.m2[i] = a.m2[i] + b.m2[i] + delta * delta * a.count * b.count / out.count;
    }
    return out;
}

BlockStats reduce(std::span<const BlockStats> blocks) {
    if (blocks.size() == 1) {
        return blocks.front();
    }
    const std::size_t half = blocks.size() / 2;
    return merge(reduce(blocks.first(half)), reduce(blocks.subspan(half)));
}

BlockStats run_block(const ExperimentConfig& config, std::size_t policy_index, std::int64_t first,
                     std::int64_t last, std::size_t points) {
    std::vector<std::vector<double>> runs;
    for (std::int64_t j = first; j < last; ++j) {
        runs.push_back(run_trajectory(config, policy_index, j));
    }
    BlockStats block;
    block.count = static_cast<double>(runs.size());
    block.sum.resize(points);
    block.m2.resize(points);
    std::vector<double> column(runs.size());
    for (std::size_t i = 0; i < points; ++i) {
        for (std::size_t r = 0; r < runs.size(); ++r) {
            column[r] = runs[r][i];
        }
        block.sum[i] = pairwise_sum(column);
        const double mean = block.sum[i] / block.count;
        double m2 = 0.0;
        for (const double v : column) {
            m2 += (v - mean) * (v - mean);
        }
        block.m2[i] = m2;
    }
    return block;
}

}  // namespace

RecordGrid default_grid(std::int64_t horizon) noexcept {
    return horizon <= 10000 ? RecordGrid::every_step() : RecordGrid::log_spaced(200);
}

std::vector<std::int64_t> time_points(const RecordGrid& grid, std::int64_t horizon) {
    if (horizon < 1) {
        throw UsageError("horizon must be >= 1");
    }
    std::vector<std::int64_t> out;
    if (grid.kind == RecordGrid::Kind::EveryStep) {
        out.resize(static_cast<std::size_t>(horizon));
        for (std::int64_t t = 1; t <= horizon; ++t) {
            out[static_cast<std::size_t>(t - 1)] = t;
        }
        return out;
    }
    if (grid.points < 2) {
        throw UsageError("log-spaced grid needs at least 2 points");
    }
    const double log_h = std::log(static_cast<double>(horizon));
    for (int i = 0; i < grid.points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(grid.points - 1);
        auto t = static_cast<std::int64_t>(std::llround(std::exp(frac * log_h)));
        t = std::clamp<std::int64_t>(t, 1, horizon);
        if (out.empty() || t > out.back()) {
            out.push_back(t);
        }
    }
    if (out.back() != horizon) {
        out.push_back(horizon);
    }
    return out;
}

void validate(const ExperimentConfig& config) {
    if (config.specs.empty()) {
        throw UsageError("specs: at least one arm is required");
    }
    if (config.policies.empty()) {
        throw UsageError("policies: at least one policy is required");
    }
    if (config.horizon < 1) {
        throw UsageError("horizon: must be >= 1");
    }
    if (config.trajectories < 1) {
        throw UsageError("trajectories: must be >= 1");
    }
    if (config.grid.kind == RecordGrid::Kind::LogSpaced && config.grid.points < 2) {
        throw UsageError("grid: log-spaced grid needs at least 2 points");
    }
    std::set<std::string> labels;
    for (const PolicyConfig& policy : config.policies) {
        validate(policy);
        if (!labels.insert(policy.display_label()).second) {
            throw UsageError("policies: duplicate label " + policy.display_label());
        }
        // Constructing the policy checks the arms are compatible with it.
        IndexPolicy probe(policy, config.specs);
    }
}

double play(std::span<const ArmSpec> specs, const PolicyConfig& config, std::int64_t horizon, std::uint64_t seed,
            const RoundObserver& observer) {
    Rng rng(seed);
    IndexPolicy policy(config, specs);
    // Forced exploration: every arm on round 1. The oracle needs none.
    ArmSet selected(specs.size());
    for (std::size_t a = 0; a < selected.size(); ++a) {
        selected[a] = a;
    }
    if (config.kind == PolicyKind::Oracle) {
        selected = oracle_select(specs);
    }
    double cumulative = 0.0;
    for (std::int64_t round = 1; round <= horizon; ++round) {
        if (round > 1) {
            selected = policy.select(round - 1, rng);
        }
        const StepOutcome outcome = step(specs, selected, rng);
        for (const ArmDraw& draw : outcome.draws) {
            for (const double x : draw.rewards) {
                policy.observe(draw.arm, x);
            }
        }
        cumulative += outcome.regret_increment;
        if (observer) {
            observer(round, selected, outcome);
        }
    }
    return cumulative;
}

std::vector<double> run_trajectory(const ExperimentConfig& config, std::size_t policy_index,
                                   std::int64_t trajectory_index) {
    const std::vector<std::int64_t> times = time_points(config.grid, config.horizon);
    const std::uint64_t seed =
        derive_seed(config.base_seed, policy_index, static_cast<std::uint64_t>(trajectory_index));
    std::vector<double> out;
    out.reserve(times.size());
    double cumulative = 0.0;
    std::size_t next = 0;
    play(config.specs, config.policies.at(policy_index), config.horizon, seed,
         [&](std::int64_t round, const ArmSet&, const StepOutcome& outcome) {
             cumulative += outcome.regret_increment;
             if (next < times.size() && times[next] == round) {
                 out.push_back(cumulative);
                 ++next;
             }
         });
    return out;
}

std::vector<RegretTrace> run_experiment(const ExperimentConfig& config, unsigned workers) {
    validate(config);
    const std::vector<std::int64_t> times = time_points(config.grid, config.horizon);
    const std::size_t policies = config.policies.size();
    const std::int64_t blocks_per_policy = (config.trajectories + kBlockSize - 1) / kBlockSize;
    const std::size_t items = policies * static_cast<std::size_t>(blocks_per_policy);

    std::vector<BlockStats> results(items);
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t item = cursor.fetch_add(1);
            if (item >= items) {
                return;
            }
            const std::size_t p = item / static_cast<std::size_t>(blocks_per_policy);
            const auto b = static_cast<std::int64_t>(item % static_cast<std::size_t>(blocks_per_policy));
            const std::int64_t first = b * kBlockSize;
            const std::int64_t last = std::min(config.trajectories, first + kBlockSize);
            try {
                results[item] = run_block(config, p, first, last, times.size());
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                cursor.store(items);
                return;
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(items)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::vector<RegretTrace> traces;
    for (std::size_t p = 0; p < policies; ++p) {
        const std::span<const BlockStats> blocks(results.data() + p * static_cast<std::size_t>(blocks_per_policy),
                                                 static_cast<std::size_t>(blocks_per_policy));
        const BlockStats total = reduce(blocks);
        RegretTrace trace;
        trace.label = config.policies[p].display_label();
        trace.times = times;
        trace.trajectories = config.trajectories;
        trace.mean_regret.resize(times.size());
        trace.std_error.resize(times.size());
        const double n = total.count;
        for (std::size_t i = 0; i < times.size(); ++i) {
            trace.mean_regret[i] = total.sum[i] / n;
            trace.std_error[i] = n > 1.0 ? std::sqrt(std::max(0.0, total.m2[i]) / (n - 1.0)) / std::sqrt(n) : 0.0;
        }
        traces.push_back(std::move(trace));
    }
    return traces;
}

}  // namespace pbandit
