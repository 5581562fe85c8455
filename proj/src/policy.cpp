#include "pbandit/policy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "pbandit/errors.hpp"

namespace pbandit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundaryNudge = 1e-12;
constexpr double kIndexTolerance = 1e-9;
constexpr int kMaxBisection = 200;

struct KindInfo {
    PolicyKind kind;
    std::string_view key;
};

constexpr std::array<KindInfo, 8> kKinds{{
    {PolicyKind::KlUcb, "kl-ucb"},
    {PolicyKind::KlUcbPlus, "kl-ucb-plus"},
    {PolicyKind::KlBernoulliUcb, "kl-bernoulli-ucb"},
    {PolicyKind::KlGaussianUcb, "kl-gaussian-ucb"},
    {PolicyKind::BayesUcb, "bayes-ucb"},
    {PolicyKind::Ts, "ts"},
    {PolicyKind::EmpKlUcb, "emp-kl-ucb"},
    {PolicyKind::Oracle, "oracle"},
}};

void require_pulled(const ArmStatistics& stats, const char* policy) {
    if (stats.pulls < 1) {
        throw StateError(std::string(policy) +
                         " index requested for an arm with no observations; every arm is pulled in round 1");
    }
}

// Stable evaluation of the dual objective
//   g(nu) = sum p log(nu - x) + log sum p / (nu - x)
// written with r = (mean - x) / (nu - mean), which sums to zero under p.
double dual_gap(std::span<const std::pair<double, double>> atoms, double mean, double nu) {
    const double scale = nu - mean;
    double log_part = 0.0;
    double inv_part = 0.0;
    for (const auto& [x, p] : atoms) {
        const double r = (mean - x) / scale;
        log_part += p * std::log1p(r);
        inv_part += p * r / (1.0 + r);
    }
    const double g = log_part + std::log1p(-inv_part);
    return g > 0.0 ? g : 0.0;
}

// Mean of the tilted distribution q_i proportional to p_i / (nu - x_i).
double tilted_mean(std::span<const std::pair<double, double>> atoms, double nu) {
    double norm = 0.0;
    double first = 0.0;
    for (const auto& [x, p] : atoms) {
        const double w = p / (nu - x);
        norm += w;
        first += w * x;
    }
    return first / norm;
}

}  // namespace

std::string_view policy_key(PolicyKind kind) noexcept {
    for (const auto& info : kKinds) {
        if (info.kind == kind) {
            return info.key;
        }
    }
    return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view key) noexcept {
    for (const auto& info : kKinds) {
        if (info.key == key) {
            return info.kind;
        }
    }
    return std::nullopt;
}

bool needs_reward_bound(PolicyKind kind) noexcept {
    return kind == PolicyKind::KlBernoulliUcb || kind == PolicyKind::KlGaussianUcb || kind == PolicyKind::EmpKlUcb;
}

std::string PolicyConfig::display_label() const { return label.empty() ? std::string(policy_key(kind)) : label; }

PolicyConfig default_policy(PolicyKind kind, double bound) {
    PolicyConfig config;
    config.kind = kind;
    config.c = kind == PolicyKind::BayesUcb ? 5.0 : 3.0;
    if (kind == PolicyKind::Ts || kind == PolicyKind::Oracle) {
        config.c = 0.0;
    }
    if (needs_reward_bound(kind)) {
        config.reward_bound = bound;
    }
    return config;
}

void validate(const PolicyConfig& config) {
    const std::string name = config.display_label();
    if (!(config.c >= 0.0) || !std::isfinite(config.c)) {
        throw UsageError("policy " + name + ": c must be a finite nonnegative number");
    }
    if (needs_reward_bound(config.kind)) {
        if (!config.reward_bound || !(*config.reward_bound > 0.0) || !std::isfinite(*config.reward_bound)) {
            throw UsageError("policy " + name + ": reward bound B must be positive");
        }
    } else if (config.reward_bound) {
        throw UsageError("policy " + name + ": reward bound B only applies to bounded-reward policies");
    }
}

double exploration_level(std::int64_t t, double c) noexcept {
    const double log_t = std::log(static_cast<double>(t));
    const double value = log_t + c * std::log(std::max(1.0, log_t));
    return value > 0.0 ? value : 0.0;
}

double exploration_level_plus(std::int64_t t, double c, double pulls) noexcept {
    const double log_t = std::log(static_cast<double>(t));
    const double value = log_t + c * std::log(std::max(1.0, log_t)) - std::log(pulls);
    return value > 0.0 ? value : 0.0;
}

IndexDivergence IndexDivergence::of(const FamilyKind& family) noexcept {
    return IndexDivergence(Kind::Family, family, mean_range(family));
}

IndexDivergence IndexDivergence::bernoulli_unit() noexcept {
    return IndexDivergence(Kind::BernoulliUnit, FamilyKind::bernoulli(), {0.0, 1.0});
}

IndexDivergence IndexDivergence::gaussian_unit() noexcept {
    return IndexDivergence(Kind::GaussianUnit, FamilyKind::gaussian(0.25), {-kInf, kInf});
}

double IndexDivergence::operator()(double x, double y) const {
    switch (kind_) {
        case Kind::BernoulliUnit:
            return d_bern(x, y);
        case Kind::GaussianUnit:
            return d_gauss(x, y);
        case Kind::Family:
            break;
    }
    if (family_.tag() == Family::Bernoulli) {
        return d_bern(x, y);
    }
    if (y >= range_.upper || y <= range_.lower) {
        return x == y ? 0.0 : kInf;
    }
    return divergence(family_, x, y);
}

double kl_ucb_index(double mean, double pulls, double level, const IndexDivergence& div) {
    if (!(pulls > 0.0)) {
        throw StateError("kl-UCB index needs at least one observation");
    }
    if (level <= 0.0) {
        return mean;
    }
    double m = mean;
    if (std::isfinite(div.lower()) && m <= div.lower()) {
        m = div.lower() + kBoundaryNudge;
    }
    if (std::isfinite(div.upper()) && m >= div.upper()) {
        m = div.upper() - kBoundaryNudge;
    }
    const double budget = level / pulls;

    double lo = m;
    double hi = div.upper();
    if (!std::isfinite(hi)) {
        double stride = 1.0;
        hi = m + stride;
        for (int i = 0; i < 2000 && div(m, hi) <= budget; ++i) {
            lo = hi;
            stride *= 2.0;
            hi = m + stride;
        }
    }
    for (int i = 0; i < kMaxBisection && hi - lo > kIndexTolerance; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (div(m, mid) <= budget) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::max(mean, 0.5 * (lo + hi));
}

void EmpiricalSupport::add(double x) {
    const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                     [](const auto& atom, double value) { return atom.first < value; });
    if (it != atoms_.end() && it->first == x) {
        ++it->second;
    } else {
        atoms_.insert(it, {x, 1});
    }
    ++count_;
}

double EmpiricalSupport::mean() const noexcept {
    if (count_ == 0) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto& [x, n] : atoms_) {
        total += x * static_cast<double>(n);
    }
    return total / static_cast<double>(count_);
}

double emp_kl_ucb_index(const EmpiricalSupport& support, double radius, double bound) {
    if (support.empty()) {
        throw StateError("empirical KL-UCB index needs at least one observation");
    }
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(support.atoms().size());
    const double n = static_cast<double>(support.count());
    for (const auto& [x, k] : support.atoms()) {
        if (x < 0.0 || x > bound) {
            std::ostringstream msg;
            msg << "sample " << x << " outside [0, " << bound << "]";
            throw DomainError(msg.str());
        }
        atoms.emplace_back(x, static_cast<double>(k) / n);
    }
    const double mean = support.mean();
    const double top = atoms.back().first;
    if (radius <= 0.0 || (top == atoms.front().first && top == bound)) {
        return mean;
    }

    if (top < bound) {
        // Mass may move onto the unobserved point B; the optimum is then
        // B - exp(sum p log(B - x) - radius) whenever it keeps q_B >= 0.
        if (dual_gap(atoms, mean, bound) <= radius) {
            double log_part = 0.0;
            for (const auto& [x, p] : atoms) {
                log_part += p * std::log(bound - x);
            }
            return std::clamp(bound - std::exp(log_part - radius), mean, bound);
        }
    }

    // Otherwise q_B = 0 and the multiplier nu > max(x, B) solves g(nu) = radius.
    double lo_gap = 0.0;
    double hi_gap = std::max(bound, 1.0);
    for (int i = 0; i < 2000 && dual_gap(atoms, mean, bound + hi_gap) > radius; ++i) {
        lo_gap = hi_gap;
        hi_gap *= 2.0;
    }
    if (top == bound && lo_gap == 0.0) {
        lo_gap = hi_gap;
        for (int i = 0; i < 2000 && dual_gap(atoms, mean, bound + lo_gap) <= radius; ++i) {
            hi_gap = lo_gap;
            lo_gap *= 0.5;
        }
    }
    for (int i = 0; i < kMaxBisection; ++i) {
        const double mid = lo_gap > 0.0 ? std::sqrt(lo_gap * hi_gap) : 0.5 * hi_gap;
        if (dual_gap(atoms, mean, bound + mid) > radius) {
            lo_gap = mid;
        } else {
            hi_gap = mid;
        }
        const double spread = tilted_mean(atoms, bound + lo_gap) - tilted_mean(atoms, bound + hi_gap);
        if (lo_gap > 0.0 && spread <= 1e-12 * std::max(1.0, bound)) {
            break;
        }
    }
    const double nu = bound + (lo_gap > 0.0 ? std::sqrt(lo_gap * hi_gap) : 0.5 * hi_gap);
    return std::clamp(tilted_mean(atoms, nu), mean, bound);
}

ArmStatistics ArmStatistics::with_samples() {
    ArmStatistics stats;
    stats.samples.emplace();
    stats.support.emplace();
    return stats;
}

ArmStatistics ArmStatistics::with_posterior(PosteriorState state) {
    ArmStatistics stats;
    stats.posterior = std::move(state);
    return stats;
}

void ArmStatistics::observe(double x) {
    if (posterior) {
        posterior->update(x);
    }
    ++pulls;
    reward_sum += x;
    if (samples) {
        samples->push_back(x);
    }
    if (support) {
        support->add(x);
    }
}

double index_kl_ucb(const ArmStatistics& stats, const IndexDivergence& div, std::int64_t t,
                    const PolicyConfig& config) {
    require_pulled(stats, "kl-UCB");
    const double pulls = static_cast<double>(stats.pulls);
    const double level = config.kind == PolicyKind::KlUcbPlus ? exploration_level_plus(t, config.c, pulls)
                                                              : exploration_level(t, config.c);
    return kl_ucb_index(stats.mean(), pulls, level, div);
}

double index_bayes_ucb(const ArmStatistics& stats, std::int64_t t, double c) {
    if (!stats.posterior) {
        throw StateError("Bayes-UCB index needs a posterior");
    }
    const double log_t = std::log(static_cast<double>(t));
    const double tail = 1.0 / (static_cast<double>(t) * std::pow(std::max(1.0, log_t), c));
    const double level = std::clamp(1.0 - tail, 0.5, 1.0 - 1e-12);
    return quantile(*stats.posterior, level);
}

double index_ts(const ArmStatistics& stats, Rng& rng) {
    if (!stats.posterior) {
        throw StateError("Thompson sampling index needs a posterior");
    }
    return sample_mean(*stats.posterior, rng);
}

double index_emp_kl_ucb(std::span<const double> samples, std::int64_t t, double c, double bound) {
    if (samples.empty()) {
        throw StateError("empirical KL-UCB index needs at least one observation");
    }
    EmpiricalSupport support;
    for (const double x : samples) {
        support.add(x);
    }
    const double radius = exploration_level(t, c) / static_cast<double>(samples.size());
    return emp_kl_ucb_index(support, radius, bound);
}

ArmSet select_arms(std::span<const double> indices, std::span<const double> thresholds) {
    if (indices.size() != thresholds.size()) {
        throw UsageError("select_arms: indices and thresholds differ in length");
    }
    ArmSet out;
    for (std::size_t a = 0; a < indices.size(); ++a) {
        if (indices[a] >= thresholds[a]) {
            out.push_back(a);
        }
    }
    return out;
}

ArmSet oracle_select(std::span<const ArmSpec> specs) { return profitable_arms(specs); }

IndexPolicy::IndexPolicy(PolicyConfig config, std::span<const ArmSpec> specs) : config_(std::move(config)) {
    validate(config_);
    const bool bounded = needs_reward_bound(config_.kind);
    for (const ArmSpec& spec : specs) {
        const FamilyKind& family = spec.dist.family();
        if (bounded && family.tag() == Family::Gaussian) {
            throw UsageError("policy " + config_.display_label() + " needs nonnegative rewards; arm family is gaussian");
        }
        switch (config_.kind) {
            case PolicyKind::BayesUcb:
            case PolicyKind::Ts:
                stats_.push_back(ArmStatistics::with_posterior(prior(family, config_.prior)));
                break;
            case PolicyKind::EmpKlUcb:
                stats_.push_back(ArmStatistics::with_samples());
                break;
            default:
                stats_.emplace_back();
                break;
        }
        switch (config_.kind) {
            case PolicyKind::KlBernoulliUcb:
                divergences_.push_back(IndexDivergence::bernoulli_unit());
                break;
            case PolicyKind::KlGaussianUcb:
                divergences_.push_back(IndexDivergence::gaussian_unit());
                break;
            default:
                divergences_.push_back(IndexDivergence::of(family));
                break;
        }
        unit_thresholds_.push_back(spec.unit_threshold());
        unit_means_.push_back(spec.dist.mean());
        reward_scales_.push_back(spec.reward_scale);
    }
    oracle_set_ = oracle_select(specs);
}

void IndexPolicy::observe(std::size_t arm, double reward) {
    ArmStatistics& stats = stats_.at(arm);
    const double x = reward / reward_scales_[arm];
    if (!needs_reward_bound(config_.kind)) {
        stats.observe(x);
        return;
    }
    const double bound = *config_.reward_bound;
    const double clipped = std::clamp(x, 0.0, bound);
    stats.observe(config_.kind == PolicyKind::EmpKlUcb ? clipped : clipped / bound);
}

double IndexPolicy::index(std::size_t arm, std::int64_t t, Rng& rng) const {
    const ArmStatistics& stats = stats_[arm];
    switch (config_.kind) {
        case PolicyKind::KlUcb:
        case PolicyKind::KlUcbPlus:
            return index_kl_ucb(stats, divergences_[arm], t, config_);
        case PolicyKind::KlBernoulliUcb:
        case PolicyKind::KlGaussianUcb:
            return *config_.reward_bound * index_kl_ucb(stats, divergences_[arm], t, config_);
        case PolicyKind::BayesUcb:
            return index_bayes_ucb(stats, t, config_.c);
        case PolicyKind::Ts:
            return index_ts(stats, rng);
        case PolicyKind::EmpKlUcb: {
            require_pulled(stats, "empirical KL-UCB");
            const double radius = exploration_level(t, config_.c) / static_cast<double>(stats.pulls);
            return emp_kl_ucb_index(*stats.support, radius, *config_.reward_bound);
        }
        case PolicyKind::Oracle:
            return unit_means_[arm];
    }
    return 0.0;
}

std::vector<double> IndexPolicy::indices(std::int64_t t, Rng& rng) const {
    std::vector<double> out(stats_.size());
    for (std::size_t a = 0; a < stats_.size(); ++a) {
        out[a] = index(a, t, rng);
    }
    return out;
}

ArmSet IndexPolicy::select(std::int64_t t, Rng& rng) const {
    if (config_.kind == PolicyKind::Oracle) {
        return oracle_set_;
    }
    const std::vector<double> u = indices(t, rng);
    return select_arms(u, unit_thresholds_);
}

}  // namespace pbandit
