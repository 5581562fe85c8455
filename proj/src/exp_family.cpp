#include "pbandit/exp_family.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pbandit/errors.hpp"

namespace pbandit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// x log(x / y) with 0 log 0 = 0.
double xlogxy(double x, double y) noexcept {
    if (x == 0.0) {
        return 0.0;
    }
    if (y == 0.0) {
        return kInf;
    }
    return x * std::log(x / y);
}

void require_mean(const FamilyKind& family, double mean, const char* what) {
    const MeanRange range = mean_range(family);
    if (std::isnan(mean) || !range.contains(mean)) {
        std::ostringstream msg;
        msg << what << " " << mean << " outside the " << family.name() << " mean range (" << range.lower << ", "
            << range.upper << ")";
        throw DomainError(msg.str());
    }
}

void require_theta(const FamilyKind& family, double theta) {
    const bool ok = family.tag() == Family::Exponential ? theta < 0.0 : std::isfinite(theta);
    if (!ok || std::isnan(theta)) {
        std::ostringstream msg;
        msg << "natural parameter " << theta << " outside the " << family.name() << " parameter space";
        throw DomainError(msg.str());
    }
}

// Log-partition function F and its derivative (the mean map).
double log_partition(const FamilyKind& family, double theta) {
    switch (family.tag()) {
        case Family::Bernoulli:
            return theta > 0.0 ? theta + std::log1p(std::exp(-theta)) : std::log1p(std::exp(theta));
        case Family::Poisson:
            return std::exp(theta);
        case Family::Exponential:
            return -std::log(-theta);
        case Family::Gaussian:
            return 0.5 * family.variance() * theta * theta;
    }
    return 0.0;
}

}  // namespace

FamilyKind FamilyKind::gaussian(double variance) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw DomainError("gaussian variance must be positive and finite");
    }
    return FamilyKind(Family::Gaussian, variance);
}

std::string FamilyKind::name() const {
    switch (tag_) {
        case Family::Bernoulli:
            return "bernoulli";
        case Family::Poisson:
            return "poisson";
        case Family::Exponential:
            return "exponential";
        case Family::Gaussian:
            return "gaussian";
    }
    return "unknown";
}

MeanRange mean_range(const FamilyKind& family) noexcept {
    switch (family.tag()) {
        case Family::Bernoulli:
            return {0.0, 1.0};
        case Family::Poisson:
        case Family::Exponential:
            return {0.0, kInf};
        case Family::Gaussian:
            return {-kInf, kInf};
    }
    return {-kInf, kInf};
}

double natural_param(const FamilyKind& family, double mean) {
    require_mean(family, mean, "mean");
    switch (family.tag()) {
        case Family::Bernoulli:
            return std::log(mean / (1.0 - mean));
        case Family::Poisson:
            return std::log(mean);
        case Family::Exponential:
            return -1.0 / mean;
        case Family::Gaussian:
            return mean / family.variance();
    }
    return 0.0;
}

double mean_of(const FamilyKind& family, double theta) {
    require_theta(family, theta);
    switch (family.tag()) {
        case Family::Bernoulli:
            return 1.0 / (1.0 + std::exp(-theta));
        case Family::Poisson:
            return std::exp(theta);
        case Family::Exponential:
            return -1.0 / theta;
        case Family::Gaussian:
            return theta * family.variance();
    }
    return 0.0;
}

double kl_natural(const FamilyKind& family, double theta, double theta_prime) {
    require_theta(family, theta);
    require_theta(family, theta_prime);
    if (theta == theta_prime) {
        return 0.0;
    }
    const double value = log_partition(family, theta_prime) - log_partition(family, theta) -
                         mean_of(family, theta) * (theta_prime - theta);
    return value > 0.0 ? value : 0.0;
}

double divergence(const FamilyKind& family, double x, double y) {
    require_mean(family, x, "first argument");
    require_mean(family, y, "second argument");
    if (x == y) {
        return 0.0;
    }
    double value = 0.0;
    switch (family.tag()) {
        case Family::Bernoulli:
            value = d_bern(x, y);
            break;
        case Family::Poisson:
            value = y - x + x * std::log(x / y);
            break;
        case Family::Exponential: {
            const double r = x / y;
            value = r - 1.0 - std::log(r);
            break;
        }
        case Family::Gaussian:
            value = (x - y) * (x - y) / (2.0 * family.variance());
            break;
    }
    return value > 0.0 ? value : 0.0;
}

double d_bern(double x, double y) noexcept {
    if (x == y) {
        return 0.0;
    }
    const double value = xlogxy(x, y) + xlogxy(1.0 - x, 1.0 - y);
    return value > 0.0 ? value : 0.0;
}

Distribution::Distribution(FamilyKind family, double mean) : family_(family), mean_(mean) {
    require_mean(family_, mean_, "mean");
}

double sample(const Distribution& dist, Rng& rng) {
    const double mean = dist.mean();
    switch (dist.family().tag()) {
        case Family::Bernoulli:
            return rng.uniform() < mean ? 1.0 : 0.0;
        case Family::Poisson:
            return static_cast<double>(rng.poisson(mean));
        case Family::Exponential:
            return mean * rng.standard_exponential();
        case Family::Gaussian:
            return mean + std::sqrt(dist.family().variance()) * rng.standard_normal();
    }
    return mean;
}

}  // namespace pbandit
