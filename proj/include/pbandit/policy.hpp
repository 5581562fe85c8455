#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pbandit/environment.hpp"
#include "pbandit/exp_family.hpp"
#include "pbandit/posterior.hpp"
#include "pbandit/random.hpp"

namespace pbandit {

enum class PolicyKind { KlUcb, KlUcbPlus, KlBernoulliUcb, KlGaussianUcb, BayesUcb, Ts, EmpKlUcb, Oracle };

/// Command-line key: "kl-ucb", "kl-ucb-plus", "kl-bernoulli-ucb", "kl-gaussian-ucb",
/// "bayes-ucb", "ts", "emp-kl-ucb", "oracle".
std::string_view policy_key(PolicyKind kind) noexcept;
std::optional<PolicyKind> parse_policy_kind(std::string_view key) noexcept;
/// True for the policies that only assume rewards in [0, B].
bool needs_reward_bound(PolicyKind kind) noexcept;

struct PolicyConfig {
    PolicyKind kind = PolicyKind::KlUcb;
    double c = 3.0;
    std::optional<double> reward_bound;
    PriorKind prior = PriorKind::jeffreys();
    std::string label;  // defaults to policy_key(kind) when empty

    std::string display_label() const;
    friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

/// Defaults: c = 5 for Bayes-UCB, c = 3 otherwise; B = `bound` for the
/// bounded-reward policies.
PolicyConfig default_policy(PolicyKind kind, double bound = 1.0);

/// Throws UsageError when c < 0 or the reward bound is present/absent against the kind.
void validate(const PolicyConfig& config);

/// log t + c log log t, with log log t read as log max(1, log t) and the result clamped at 0.
double exploration_level(std::int64_t t, double c) noexcept;
/// log(t max(1, log t)^c / N), clamped at 0.
double exploration_level_plus(std::int64_t t, double c, double pulls) noexcept;

/// Divergence used inside an upper-confidence index together with the mean range it is searched on.
class IndexDivergence {
public:
    static IndexDivergence of(const FamilyKind& family) noexcept;
    /// d_bern on [0, 1].
    static IndexDivergence bernoulli_unit() noexcept;
    /// d_gauss on the whole real line.
    static IndexDivergence gaussian_unit() noexcept;

    /// Accepts the closure of the range; +inf when y is on the boundary and x != y.
    double operator()(double x, double y) const;
    double lower() const noexcept { return range_.lower; }
    double upper() const noexcept { return range_.upper; }

private:
    enum class Kind { Family, BernoulliUnit, GaussianUnit };
    IndexDivergence(Kind kind, FamilyKind family, MeanRange range) noexcept
        : kind_(kind), family_(family), range_(range) {}

    Kind kind_;
    FamilyKind family_;
    MeanRange range_;
};

/// sup{q >= mean : pulls * d(mean, q) <= level}, by bisection to 1e-9 absolute.
/// A mean on the range boundary is moved 1e-12 inside first.
double kl_ucb_index(double mean, double pulls, double level, const IndexDivergence& div);

/// Multiset of observed rewards stored as sorted (value, count) atoms.
class EmpiricalSupport {
public:
    void add(double x);
    std::span<const std::pair<double, std::int64_t>> atoms() const noexcept { return atoms_; }
    std::int64_t count() const noexcept { return count_; }
    double mean() const noexcept;
    bool empty() const noexcept { return count_ == 0; }

private:
    std::vector<std::pair<double, std::int64_t>> atoms_;
    std::int64_t count_ = 0;
};

/// Largest mean of a distribution q on support(p) + {bound} with KL(p, q) <= radius.
double emp_kl_ucb_index(const EmpiricalSupport& support, double radius, double bound);

/// Per-arm sufficient statistics plus the optional extras some policies need.
struct ArmStatistics {
    std::int64_t pulls = 0;
    double reward_sum = 0.0;
    std::optional<std::vector<double>> samples;
    std::optional<EmpiricalSupport> support;
    std::optional<PosteriorState> posterior;

    /// Statistics that also keep the raw-sample log.
    static ArmStatistics with_samples();
    static ArmStatistics with_posterior(PosteriorState state);

    void observe(double x);
    double mean() const noexcept { return pulls > 0 ? reward_sum / static_cast<double>(pulls) : 0.0; }
};

/// kl-UCB-4P family of indices; the exploration level is the plain one except for KlUcbPlus.
double index_kl_ucb(const ArmStatistics& stats, const IndexDivergence& div, std::int64_t t,
                    const PolicyConfig& config);
/// Posterior quantile at 1 - 1 / (t max(1, log t)^c), level clamped to [0.5, 1 - 1e-12].
double index_bayes_ucb(const ArmStatistics& stats, std::int64_t t, double c);
double index_ts(const ArmStatistics& stats, Rng& rng);
/// Empirical-likelihood index with radius exploration_level(t, c) / N.
double index_emp_kl_ucb(std::span<const double> samples, std::int64_t t, double c, double bound);

/// {a : index_a >= threshold_a}.
ArmSet select_arms(std::span<const double> indices, std::span<const double> thresholds);
/// {a : mu_a - tau_a > 0}.
ArmSet oracle_select(std::span<const ArmSpec> specs);

/// One policy instance driving one trajectory.
///
/// Rewards arrive in the arm's scaled units and are divided by reward_scale
/// before use. The bounded-reward policies truncate to [0, B] and, except for
/// Emp-KL-UCB, rescale into [0, 1].
class IndexPolicy {
public:
    IndexPolicy(PolicyConfig config, std::span<const ArmSpec> specs);

    const PolicyConfig& config() const noexcept { return config_; }
    std::size_t arms() const noexcept { return stats_.size(); }
    const ArmStatistics& stats(std::size_t arm) const { return stats_.at(arm); }

    void observe(std::size_t arm, double reward);
    /// Indices on the unscaled reward axis; round t >= 1 has been played.
    std::vector<double> indices(std::int64_t t, Rng& rng) const;
    /// The arm subset for round t + 1.
    ArmSet select(std::int64_t t, Rng& rng) const;

private:
    double index(std::size_t arm, std::int64_t t, Rng& rng) const;

    PolicyConfig config_;
    std::vector<ArmStatistics> stats_;
    std::vector<IndexDivergence> divergences_;
    std::vector<double> unit_thresholds_;
    std::vector<double> unit_means_;
    std::vector<double> reward_scales_;
    ArmSet oracle_set_;
};

}  // namespace pbandit
