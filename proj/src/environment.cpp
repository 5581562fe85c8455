#include "pbandit/environment.hpp"

#include <cmath>
#include <sstream>

#include "pbandit/errors.hpp"

namespace pbandit {

ClientCountLaw ClientCountLaw::constant(std::int64_t k) {
    if (k < 1) {
        throw DomainError("constant client count must be >= 1");
    }
    return ClientCountLaw(Kind::Constant, k, 0.0);
}

ClientCountLaw ClientCountLaw::shifted_poisson(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("shifted-poisson lambda must be finite and >= 0");
    }
    return ClientCountLaw(Kind::ShiftedPoisson, 1, lambda);
}

double ClientCountLaw::min_count() const noexcept {
    return kind_ == Kind::Constant ? static_cast<double>(k_) : 1.0;
}

double ClientCountLaw::mean_count() const noexcept {
    return kind_ == Kind::Constant ? static_cast<double>(k_) : 1.0 + lambda_;
}

std::int64_t draw_client_count(const ClientCountLaw& law, Rng& rng) {
    if (law.kind() == ClientCountLaw::Kind::Constant) {
        return law.constant_count();
    }
    return 1 + rng.poisson(law.lambda());
}

StepOutcome step(std::span<const ArmSpec> specs, const ArmSet& selected, Rng& rng) {
    const std::size_t k = specs.size();
    std::vector<char> chosen(k, 0);
    for (std::size_t i = 0; i < selected.size(); ++i) {
        const std::size_t arm = selected[i];
        if (arm >= k || (i > 0 && arm <= selected[i - 1])) {
            std::ostringstream msg;
            msg << "selected arm " << arm << " invalid for " << k << " arms (indices must be ascending and < K)";
            throw UsageError(msg.str());
        }
        chosen[arm] = 1;
    }

    std::vector<std::int64_t> counts(k);
    for (std::size_t a = 0; a < k; ++a) {
        counts[a] = draw_client_count(specs[a].clients, rng);
    }

    StepOutcome out;
    out.arm_regret.assign(k, 0.0);
    out.draws.reserve(selected.size());
    for (const std::size_t a : selected) {
        ArmDraw draw{a, {}};
        draw.rewards.reserve(static_cast<std::size_t>(counts[a]));
        for (std::int64_t c = 0; c < counts[a]; ++c) {
            draw.rewards.push_back(specs[a].reward_scale * sample(specs[a].dist, rng));
        }
        out.draws.push_back(std::move(draw));
    }

    for (std::size_t a = 0; a < k; ++a) {
        const double gap = specs[a].gap();
        const bool profitable = gap > 0.0;
        if (profitable != static_cast<bool>(chosen[a])) {
            out.arm_regret[a] = std::fabs(gap) * static_cast<double>(counts[a]);
        }
        out.regret_increment += out.arm_regret[a];
    }
    return out;
}

ArmSet profitable_arms(std::span<const ArmSpec> specs) {
    ArmSet out;
    for (std::size_t a = 0; a < specs.size(); ++a) {
        if (specs[a].gap() > 0.0) {
            out.push_back(a);
        }
    }
    return out;
}

CreditScenario credit_scenario(std::span<const CreditArm> arms) {
    CreditScenario out;
    for (std::size_t a = 0; a < arms.size(); ++a) {
        const CreditArm& arm = arms[a];
        const bool ok = arm.repay_probability > 0.0 && arm.repay_probability < 1.0 && arm.interest_rate > -1.0 &&
                        arm.loan > 0.0 && std::isfinite(arm.interest_rate) && std::isfinite(arm.loan);
        if (!ok) {
            std::ostringstream msg;
            msg << "credit arm " << a + 1 << ": need p in (0,1), rho > -1, loan > 0";
            throw DomainError(msg.str());
        }
        const double scale = (1.0 + arm.interest_rate) * arm.loan;
        const Distribution dist(FamilyKind::bernoulli(), arm.repay_probability);
        out.reduced.push_back(ArmSpec{dist, 1.0 / (1.0 + arm.interest_rate), arm.clients, 1.0});
        out.raw.push_back(ArmSpec{dist, arm.loan, arm.clients, scale});
        out.scale.push_back(scale);
    }
    return out;
}

}  // namespace pbandit
