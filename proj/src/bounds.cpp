#include "pbandit/bounds.hpp"

#include <cmath>
#include <sstream>

#include "pbandit/errors.hpp"

namespace pbandit {

double kinf(const FamilyKind& family, double mu, double tau) {
    if (!(mu < tau)) {
        std::ostringstream msg;
        msg << "K_inf is defined for non-profitable arms only (mean " << mu << " >= threshold " << tau << ")";
        throw DomainError(msg.str());
    }
    return divergence(family, mu, tau);
}

BoundReport bound_report(std::span<const ArmSpec> specs) {
    BoundReport report;
    for (std::size_t a = 0; a < specs.size(); ++a) {
        const ArmSpec& spec = specs[a];
        const double gap = spec.gap();
        if (gap == 0.0) {
            std::ostringstream msg;
            msg << "arm " << a + 1 << " has zero gap (mean equals threshold); bounds are undefined";
            throw DomainError(msg.str());
        }
        if (gap > 0.0) {
            continue;
        }
        ArmBound bound{};
        bound.arm = a;
        bound.gap = gap;
        bound.kinf = kinf(spec.dist.family(), spec.dist.mean(), spec.unit_threshold());
        bound.pull_rate_lower = 1.0 / bound.kinf;
        bound.slope_lower = std::fabs(gap) / bound.kinf;
        // Ratio first: a constant client law gives exactly 1.0, so the two slopes coincide bit for bit.
        bound.slope_upper = (spec.clients.mean_count() / spec.clients.min_count()) * bound.slope_lower;
        report.lower_slope += bound.slope_lower;
        report.upper_slope += bound.slope_upper;
        report.arms.push_back(bound);
    }
    return report;
}

}  // namespace pbandit
