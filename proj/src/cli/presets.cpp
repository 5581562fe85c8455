#include "pbandit/cli/presets.hpp"

#include <array>

namespace pbandit::cli {
namespace {

constexpr std::array<double, 5> kLambdas{3, 4, 5, 6, 7};

std::vector<ArmSpec> arms(const FamilyKind& family, const std::array<double, 5>& means,
                          const std::array<double, 5>& thresholds) {
    std::vector<ArmSpec> out;
    for (std::size_t a = 0; a < means.size(); ++a) {
        out.push_back(ArmSpec{Distribution(family, means[a]), thresholds[a],
                              ClientCountLaw::shifted_poisson(kLambdas[a]), 1.0});
    }
    return out;
}

std::vector<PolicyConfig> roster(std::initializer_list<PolicyKind> kinds, double bound) {
    std::vector<PolicyConfig> out;
    for (const PolicyKind kind : kinds) {
        out.push_back(default_policy(kind, bound));
    }
    return out;
}

std::vector<ScenarioPreset> build() {
    using K = PolicyKind;
    const auto all = {K::KlUcb,         K::KlUcbPlus, K::KlBernoulliUcb, K::KlGaussianUcb,
                      K::BayesUcb,      K::Ts,        K::EmpKlUcb,       K::Oracle};
    std::vector<ScenarioPreset> out;
    out.push_back({"bernoulli", "Bernoulli arms; profitable arms 2 and 3",
                   arms(FamilyKind::bernoulli(), {0.1, 0.3, 0.5, 0.5, 0.7}, {0.2, 0.2, 0.4, 0.6, 0.8}),
                   roster(all, 1.0), 1.0});
    out.push_back({"poisson", "Poisson arms; profitable arms 2 and 4; bounded policies truncate at 100",
                   arms(FamilyKind::poisson(), {1, 2, 3, 4, 5}, {2, 1, 4, 3, 6}), roster(all, 100.0), 100.0});
    out.push_back({"poisson-sharp", "Poisson arms with thresholds 0.1 from the means; family-aware policies only",
                   arms(FamilyKind::poisson(), {1, 2, 3, 4, 5}, {1.1, 1.9, 3.1, 3.9, 5.1}),
                   roster({K::KlUcb, K::KlUcbPlus, K::BayesUcb, K::Ts}, 100.0), 100.0});
    return out;
}

}  // namespace

const std::vector<ScenarioPreset>& presets() {
    static const std::vector<ScenarioPreset> table = build();
    return table;
}

const ScenarioPreset* find_preset(std::string_view name) {
    for (const ScenarioPreset& preset : presets()) {
        if (preset.name == name) {
            return &preset;
        }
    }
    return nullptr;
}

ExperimentConfig preset_config(const ScenarioPreset& preset) {
    ExperimentConfig config;
    config.name = preset.name;
    config.specs = preset.specs;
    config.policies = preset.roster;
    config.horizon = kFullHorizon;
    config.trajectories = kFullTrajectories;
    config.base_seed = 0;
    config.grid = default_grid(config.horizon);
    return config;
}

}  // namespace pbandit::cli
