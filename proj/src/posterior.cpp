#include "pbandit/posterior.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "pbandit/errors.hpp"

namespace pbandit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_proper(const PosteriorState& state, const char* op) {
    if (!state.proper()) {
        std::ostringstream msg;
        msg << op << " on an improper " << state.family().name()
            << " posterior; pull the arm at least once (forced initial exploration) before querying it";
        throw StateError(msg.str());
    }
}

bool integral(double x) noexcept { return std::floor(x) == x; }

}  // namespace

PosteriorState::PosteriorState(FamilyKind family, double prior_a, double prior_b)
    : family_(family), prior_a_(prior_a), prior_b_(prior_b) {
    const bool gaussian = family_.tag() == Family::Gaussian;
    const bool bad_a = std::isnan(prior_a_) || (!gaussian && prior_a_ < 0.0);
    const bool bad_b = std::isnan(prior_b_) || prior_b_ < 0.0 || (gaussian && prior_b_ == 0.0);
    if (bad_a || bad_b || (!gaussian && !std::isfinite(prior_a_))) {
        std::ostringstream msg;
        msg << "invalid " << family_.name() << " prior hyperparameters (" << prior_a_ << ", " << prior_b_ << ")";
        throw DomainError(msg.str());
    }
}

double PosteriorState::param_a() const noexcept {
    const double n = static_cast<double>(n_);
    switch (family_.tag()) {
        case Family::Bernoulli:
        case Family::Poisson:
            return prior_a_ + sum_;
        case Family::Exponential:
            return prior_a_ + n;
        case Family::Gaussian: {
            const double sigma2 = family_.variance();
            if (n_ == 0) {
                return prior_a_;
            }
            if (std::isinf(prior_b_)) {
                return sum_ / n;
            }
            const double precision = 1.0 / prior_b_ + n / sigma2;
            return (prior_a_ / prior_b_ + sum_ / sigma2) / precision;
        }
    }
    return 0.0;
}

double PosteriorState::param_b() const noexcept {
    const double n = static_cast<double>(n_);
    switch (family_.tag()) {
        case Family::Bernoulli:
            return prior_b_ + n - sum_;
        case Family::Poisson:
            return prior_b_ + n;
        case Family::Exponential:
            return prior_b_ + sum_;
        case Family::Gaussian:
            if (n_ == 0) {
                return prior_b_;
            }
            return 1.0 / (1.0 / prior_b_ + n / family_.variance());
    }
    return 0.0;
}

bool PosteriorState::proper() const noexcept {
    const double a = param_a();
    const double b = param_b();
    if (family_.tag() == Family::Gaussian) {
        return std::isfinite(b) && b > 0.0;
    }
    return a > 0.0 && b > 0.0;
}

PosteriorState PosteriorState::updated(double x) const {
    PosteriorState next = *this;
    next.update(x);
    return next;
}

void PosteriorState::update(double x) {
    bool ok = std::isfinite(x);
    switch (family_.tag()) {
        case Family::Bernoulli:
            ok = ok && (x == 0.0 || x == 1.0);
            break;
        case Family::Poisson:
            ok = ok && x >= 0.0 && integral(x);
            break;
        case Family::Exponential:
            ok = ok && x > 0.0;
            break;
        case Family::Gaussian:
            break;
    }
    if (!ok) {
        std::ostringstream msg;
        msg << "observation " << x << " outside the " << family_.name() << " support";
        throw DomainError(msg.str());
    }
    ++n_;
    sum_ += x;
}

PosteriorState prior(const FamilyKind& family, const PriorKind& kind) {
    if (kind.type == PriorType::Custom) {
        return PosteriorState(family, kind.a, kind.b);
    }
    const bool jeffreys = kind.type == PriorType::Jeffreys;
    switch (family.tag()) {
        case Family::Bernoulli:
            return jeffreys ? PosteriorState(family, 0.5, 0.5) : PosteriorState(family, 1.0, 1.0);
        case Family::Poisson:
            return PosteriorState(family, jeffreys ? 0.5 : 1.0, 0.0);
        case Family::Exponential:
            return PosteriorState(family, jeffreys ? 0.0 : 1.0, 0.0);
        case Family::Gaussian:
            return PosteriorState(family, 0.0, kInf);
    }
    return PosteriorState(family, 0.5, 0.5);
}

PosteriorState update(const PosteriorState& state, double x) { return state.updated(x); }

double cdf(const PosteriorState& state, double x) {
    require_proper(state, "cdf");
    const double a = state.param_a();
    const double b = state.param_b();
    switch (state.family().tag()) {
        case Family::Bernoulli:
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return boost::math::ibeta(a, b, x);
        case Family::Poisson:
            if (x <= 0.0) return 0.0;
            if (std::isinf(x)) return 1.0;
            return boost::math::gamma_p(a, b * x);
        case Family::Exponential:
            // mean <= x  <=>  rate >= 1 / x
            if (x <= 0.0) return 0.0;
            if (std::isinf(x)) return 1.0;
            return boost::math::gamma_q(a, b / x);
        case Family::Gaussian:
            return 0.5 * boost::math::erfc(-(x - a) / std::sqrt(2.0 * b));
    }
    return 0.0;
}

double quantile(const PosteriorState& state, double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError("quantile level must lie in (0, 1)");
    }
    require_proper(state, "quantile");
    const double a = state.param_a();
    const double b = state.param_b();
    switch (state.family().tag()) {
        case Family::Bernoulli:
            return boost::math::ibeta_inv(a, b, level);
        case Family::Poisson:
            return boost::math::gamma_p_inv(a, level) / b;
        case Family::Exponential:
            return b / boost::math::gamma_q_inv(a, level);
        case Family::Gaussian:
            return a - std::sqrt(2.0 * b) * boost::math::erfc_inv(2.0 * level);
    }
    return 0.0;
}

double sample_mean(const PosteriorState& state, Rng& rng) {
    require_proper(state, "sample_mean");
    const double a = state.param_a();
    const double b = state.param_b();
    switch (state.family().tag()) {
        case Family::Bernoulli:
            return rng.beta(a, b);
        case Family::Poisson:
            return rng.gamma(a) / b;
        case Family::Exponential:
            return b / rng.gamma(a);
        case Family::Gaussian:
            return a + std::sqrt(b) * rng.standard_normal();
    }
    return 0.0;
}

}  // namespace pbandit
