#pragma once

#include <string>
#include <utility>

#include "pbandit/random.hpp"

namespace pbandit {

enum class Family { Bernoulli, Poisson, Exponential, Gaussian };

/// A one-dimensional canonical exponential family with sufficient statistic
/// G(x) = x. The Gaussian member has known variance.
class FamilyKind {
public:
    static FamilyKind bernoulli() noexcept { return FamilyKind(Family::Bernoulli, 0.0); }
    static FamilyKind poisson() noexcept { return FamilyKind(Family::Poisson, 0.0); }
    static FamilyKind exponential() noexcept { return FamilyKind(Family::Exponential, 0.0); }
    /// Throws DomainError unless variance > 0.
    static FamilyKind gaussian(double variance);

    Family tag() const noexcept { return tag_; }
    /// Known variance of the Gaussian member; 0 for the other families.
    double variance() const noexcept { return variance_; }
    /// Lowercase name: "bernoulli", "poisson", "exponential", "gaussian".
    std::string name() const;

    friend bool operator==(const FamilyKind&, const FamilyKind&) = default;

private:
    FamilyKind(Family tag, double variance) noexcept : tag_(tag), variance_(variance) {}

    Family tag_;
    double variance_;
};

/// Open interval of admissible means.
struct MeanRange {
    double lower;
    double upper;

    bool contains(double mean) const noexcept { return mean > lower && mean < upper; }
};

MeanRange mean_range(const FamilyKind& family) noexcept;

/// Inverse of the mean map. The Exponential family uses theta = -rate.
double natural_param(const FamilyKind& family, double mean);
double mean_of(const FamilyKind& family, double theta);

/// K(theta, theta') = F(theta') - F(theta) - F'(theta)(theta' - theta).
double kl_natural(const FamilyKind& family, double theta, double theta_prime);

/// d(x, y) = K(mu^-1(x), mu^-1(y)) via closed forms in mean space.
/// Both arguments must lie strictly inside the mean range.
double divergence(const FamilyKind& family, double x, double y);

/// Bernoulli divergence on the closed square, with 0 log 0 = 0 and +inf when
/// y sits on {0, 1} and x != y.
double d_bern(double x, double y) noexcept;

/// 2 (x - y)^2: the sub-Gaussian divergence for rewards in [0, 1].
constexpr double d_gauss(double x, double y) noexcept { return 2.0 * (x - y) * (x - y); }

class Distribution {
public:
    /// Throws DomainError when mean is outside the family's open range.
    Distribution(FamilyKind family, double mean);

    const FamilyKind& family() const noexcept { return family_; }
    double mean() const noexcept { return mean_; }

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    FamilyKind family_;
    double mean_;
};

double sample(const Distribution& dist, Rng& rng);

}  // namespace pbandit
