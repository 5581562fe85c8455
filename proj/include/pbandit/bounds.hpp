#pragma once

#include <span>
#include <vector>

#include "pbandit/environment.hpp"
#include "pbandit/exp_family.hpp"

namespace pbandit {

/// K_inf(nu, tau) for a non-profitable arm of a one-dimensional exponential
/// family: the infimum over alternatives with mean above tau is attained at
/// the boundary, so it equals d(mu, tau). Requires mu < tau.
double kinf(const FamilyKind& family, double mu, double tau);

struct ArmBound {
    std::size_t arm;
    double gap;                  // mu - tau in reward units (negative)
    double kinf;                 // nats
    double pull_rate_lower;      // 1 / kinf: clients per log T
    double slope_lower;          // |gap| / kinf
    double slope_upper;          // (c~+ / c-) |gap| / kinf
};

struct BoundReport {
    std::vector<ArmBound> arms;  // non-profitable arms only, ascending
    double lower_slope = 0.0;    // liminf R_T / log T
    double upper_slope = 0.0;    // limsup R_T / log T for the asymptotically optimal policies
};

/// Throws DomainError naming the arm when some gap is exactly zero.
BoundReport bound_report(std::span<const ArmSpec> specs);

}  // namespace pbandit
