#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pbandit/exp_family.hpp"
#include "pbandit/random.hpp"

namespace pbandit {

/// Number of clients presented by an arm in one round: either a constant
/// k >= 1 or 1 + Poisson(lambda).
class ClientCountLaw {
public:
    enum class Kind { Constant, ShiftedPoisson };

    static ClientCountLaw constant(std::int64_t k);
    static ClientCountLaw shifted_poisson(double lambda);

    Kind kind() const noexcept { return kind_; }
    std::int64_t constant_count() const noexcept { return k_; }
    double lambda() const noexcept { return lambda_; }

    /// Almost-sure lower bound c^-.
    double min_count() const noexcept;
    /// Expected count, used as c~^+ in the bound formulas.
    double mean_count() const noexcept;

    friend bool operator==(const ClientCountLaw&, const ClientCountLaw&) = default;

private:
    ClientCountLaw(Kind kind, std::int64_t k, double lambda) noexcept : kind_(kind), k_(k), lambda_(lambda) {}

    Kind kind_;
    std::int64_t k_;
    double lambda_;
};

std::int64_t draw_client_count(const ClientCountLaw& law, Rng& rng);

/// One arm of a profitable-bandit problem.
///
/// Each client reward is reward_scale * X with X ~ dist; the threshold is in
/// the same (scaled) units. A scale of 1 is the plain model. Credit scenarios
/// use reward_scale = (1 + rho) * loan.
struct ArmSpec {
    Distribution dist;
    double threshold;
    ClientCountLaw clients;
    double reward_scale = 1.0;

    /// Expected profit per client, reward_scale * mean - threshold.
    double gap() const noexcept { return reward_scale * dist.mean() - threshold; }
    /// Threshold expressed on the scale of dist.
    double unit_threshold() const noexcept { return threshold / reward_scale; }

    friend bool operator==(const ArmSpec&, const ArmSpec&) = default;
};

/// Selected arms, ascending and without repetition.
using ArmSet = std::vector<std::size_t>;

struct ArmDraw {
    std::size_t arm;
    std::vector<double> rewards;  // in scaled units; size == client count
};

struct StepOutcome {
    std::vector<ArmDraw> draws;           // one entry per selected arm, ascending
    std::vector<double> arm_regret;       // per-arm regret contribution, size K
    double regret_increment = 0.0;        // sum of arm_regret
};

/// One round: draws a client count for every arm (ascending), then the rewards of
/// the selected arms (ascending). Unselected profitable arms still cost their
/// forgone profit gap * C.
StepOutcome step(std::span<const ArmSpec> specs, const ArmSet& selected, Rng& rng);

/// Profitable arms {a : gap_a > 0}.
ArmSet profitable_arms(std::span<const ArmSpec> specs);

/// One credit-scoring category: repayment probability, interest rate, loan size.
struct CreditArm {
    double repay_probability;
    double interest_rate;
    double loan;
    ClientCountLaw clients;
};

struct CreditScenario {
    /// Bernoulli(p) arms with threshold 1 / (1 + rho); rewards in units of (1 + rho) * loan.
    std::vector<ArmSpec> reduced;
    /// Same arms in currency: rewards (1 + rho) * loan * B, threshold loan.
    std::vector<ArmSpec> raw;
    /// (1 + rho) * loan per arm; multiplies reduced-unit regret back to currency.
    std::vector<double> scale;
};

CreditScenario credit_scenario(std::span<const CreditArm> arms);

}  // namespace pbandit
