#pragma once

#include <cstdint>

#include "pbandit/exp_family.hpp"
#include "pbandit/random.hpp"

namespace pbandit {

enum class PriorType { Jeffreys, Uniform, Custom };

struct PriorKind {
    PriorType type = PriorType::Jeffreys;
    // Custom hyperparameters: Beta(a, b); Gamma(shape a, rate b); Normal(location a, variance b).
    double a = 0.0;
    double b = 0.0;

    static PriorKind jeffreys() noexcept { return {}; }
    static PriorKind uniform() noexcept { return {PriorType::Uniform, 0.0, 0.0}; }
    static PriorKind custom(double a, double b) noexcept { return {PriorType::Custom, a, b}; }

    friend bool operator==(const PriorKind&, const PriorKind&) = default;
};

/// Conjugate posterior over one arm.
///
///   Bernoulli    Beta(a0 + S, b0 + n - S) on the mean
///   Poisson      Gamma(a0 + S, b0 + n) on the mean
///   Exponential  Gamma(a0 + n, b0 + S) on the rate; the mean is 1 / rate
///   Gaussian     Normal on the mean; a flat prior is encoded as infinite variance
///
/// Only the prior hyperparameters and the sufficient statistics (n, S) are
/// stored, so states built from permuted observation sequences compare equal
/// whenever their sums do.
class PosteriorState {
public:
    PosteriorState(FamilyKind family, double prior_a, double prior_b);

    const FamilyKind& family() const noexcept { return family_; }
    std::int64_t count() const noexcept { return n_; }
    double sum() const noexcept { return sum_; }
    double prior_a() const noexcept { return prior_a_; }
    double prior_b() const noexcept { return prior_b_; }

    /// Current first parameter: alpha, Gamma shape, or Normal location.
    double param_a() const noexcept;
    /// Current second parameter: beta, Gamma rate, or Normal variance.
    double param_b() const noexcept;

    bool proper() const noexcept;

    /// Conjugate update with one observation; throws DomainError when x is
    /// outside the family's support.
    PosteriorState updated(double x) const;
    void update(double x);

    friend bool operator==(const PosteriorState&, const PosteriorState&) = default;

private:
    FamilyKind family_;
    double prior_a_;
    double prior_b_;
    std::int64_t n_ = 0;
    double sum_ = 0.0;
};

/// Jeffreys: Beta(1/2, 1/2), Gamma(1/2, 0), Gamma(0, 0), flat.
/// Uniform: Beta(1, 1), Gamma(1, 0) flat on the Poisson mean, Gamma(1, 0) flat on
/// the Exponential rate, flat.
PosteriorState prior(const FamilyKind& family, const PriorKind& kind);

PosteriorState update(const PosteriorState& state, double x);

/// Posterior CDF of the arm mean. Throws StateError on improper states.
double cdf(const PosteriorState& state, double x);

/// Quantile of the arm mean at level in (0, 1). Throws StateError on improper states.
double quantile(const PosteriorState& state, double level);

/// Draws a parameter from the posterior and returns its mean.
double sample_mean(const PosteriorState& state, Rng& rng);

}  // namespace pbandit
