// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Criteria 5 and 6 read the traces produced by the first run of criterion 8
// (bernoulli preset, T = 5000, 1000 trajectories, seed 7), so the expensive
// desk-scale simulation happens twice rather than three times.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pbandit/bounds.hpp"
#include "pbandit/cli/commands.hpp"
#include "pbandit/cli/presets.hpp"
#include "pbandit/exp_family.hpp"
#include "pbandit/policy.hpp"
#include "pbandit/posterior.hpp"
#include "pbandit/simulate.hpp"

namespace {

using namespace pbandit;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

// --- 1 ---------------------------------------------------------------------

Verdict divergence_vs_numeric_kl() {
    const auto start = Clock::now();
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    std::string worst_at;
    int pairs = 0;
    const std::vector<FamilyKind> families = {FamilyKind::bernoulli(), FamilyKind::poisson(),
                                              FamilyKind::exponential(), FamilyKind::gaussian(1.0),
                                              FamilyKind::gaussian(0.3), FamilyKind::gaussian(4.0)};
    for (const auto& family : families) {
        const int n = family.tag() == Family::Gaussian ? 34 : 100;  // 102 Gaussian pairs over three variances
        for (int i = 0; i < n; ++i) {
            double x = 0.0;
            double y = 0.0;
            switch (family.tag()) {
                case Family::Bernoulli:
                    x = 0.01 + 0.98 * u(gen);
                    y = 0.01 + 0.98 * u(gen);
                    break;
                case Family::Poisson:
                    x = 0.1 + 30.0 * u(gen);
                    y = 0.1 + 30.0 * u(gen);
                    break;
                case Family::Exponential:
                    x = std::exp(-2.0 + 4.0 * u(gen));
                    y = std::exp(-2.0 + 4.0 * u(gen));
                    break;
                case Family::Gaussian:
                    x = -5.0 + 10.0 * u(gen);
                    y = -5.0 + 10.0 * u(gen);
                    break;
            }
            const double err = std::abs(divergence(family, x, y) - oracle::numeric_kl(family, x, y));
            if (err > worst) {
                worst = err;
                worst_at = fmt("%s(%.4g, %.4g)", std::string(family.name()).c_str(), x, y);
            }
            ++pairs;
        }
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-6 && elapsed < 10.0,
            fmt("%d pairs, max |closed form - numeric KL| = %.2e at %s (tol 1e-6), %.1f s (limit 10 s)", pairs, worst,
                worst_at.c_str(), elapsed)};
}

// --- 2 ---------------------------------------------------------------------

Verdict index_vs_grid_search() {
    const auto start = Clock::now();
    std::mt19937_64 gen(202);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<FamilyKind> families = {FamilyKind::bernoulli(), FamilyKind::poisson(),
                                              FamilyKind::exponential(), FamilyKind::gaussian(1.0)};
    double worst_grid = 0.0;
    double worst_gauss = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const FamilyKind& family = families[static_cast<std::size_t>(i) % families.size()];
        double mean = 0.0;
        switch (family.tag()) {
            case Family::Bernoulli: mean = 0.02 + 0.96 * u(gen); break;
            case Family::Poisson: mean = 0.2 + 8.0 * u(gen); break;
            case Family::Exponential: mean = 0.2 + 3.0 * u(gen); break;
            case Family::Gaussian: mean = -2.0 + 4.0 * u(gen); break;
        }
        const double pulls = static_cast<double>(5 + gen() % 996);
        const auto t = static_cast<std::int64_t>(2 + gen() % 9999);
        const double c = static_cast<double>(gen() % 4);
        const double level = exploration_level(t, c);

        const double index = kl_ucb_index(mean, pulls, level, IndexDivergence::of(family));
        const auto d = [&family](double x, double y) { return divergence(family, x, y); };
        const double limit = family.tag() == Family::Bernoulli ? 1.0 : 1e12;
        worst_grid = std::max(worst_grid, std::abs(index - oracle::grid_kl_ucb(mean, pulls, level, d, limit)));

        const double gauss = kl_ucb_index(mean, pulls, level, IndexDivergence::gaussian_unit());
        worst_gauss = std::max(worst_gauss, std::abs(gauss - (mean + std::sqrt(level / (2.0 * pulls)))));
    }
    const double elapsed = seconds_since(start);
    return {worst_grid <= 1e-5 && worst_gauss <= 1e-9 && elapsed < 30.0,
            fmt("1000 tuples, max |bisection - grid| = %.2e (tol 1e-5), max |d_gauss index - closed form| = %.2e "
                "(tol 1e-9), %.1f s (limit 30 s)",
                worst_grid, worst_gauss, elapsed)};
}

// --- 3 ---------------------------------------------------------------------

Verdict posterior_quantile_vs_monte_carlo() {
    const auto start = Clock::now();
    std::mt19937_64 gen(303);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Rng rng(derive_seed(303, 0, 0));
    constexpr int kDraws = 1000000;
    constexpr double kLevel = 0.9;
    std::vector<double> draws(kDraws);
    double worst_z = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto family = std::vector<FamilyKind>{FamilyKind::bernoulli(), FamilyKind::poisson(),
                                                    FamilyKind::exponential(),
                                                    FamilyKind::gaussian(0.5)}[static_cast<std::size_t>(i) % 4];
        PosteriorState state = prior(family, PriorKind::jeffreys());
        // A few observations from a random arm make every Jeffreys posterior proper.
        const int n = 1 + static_cast<int>(gen() % 40);
        double arm_mean = 0.0;
        switch (family.tag()) {
            case Family::Bernoulli: arm_mean = 0.05 + 0.9 * u(gen); break;
            case Family::Poisson: arm_mean = 0.5 + 10.0 * u(gen); break;
            case Family::Exponential: arm_mean = 0.2 + 5.0 * u(gen); break;
            case Family::Gaussian: arm_mean = -3.0 + 6.0 * u(gen); break;
        }
        const Distribution arm(family, arm_mean);
        for (int k = 0; k < n; ++k) state.update(sample(arm, rng));
        if (!state.proper()) state.update(family.tag() == Family::Bernoulli ? 1.0 : arm_mean);

        const double q = quantile(state, kLevel);
        for (double& x : draws) x = sample_mean(state, rng);
        const auto at = draws.begin() + static_cast<std::ptrdiff_t>(kLevel * kDraws);
        std::nth_element(draws.begin(), at, draws.end());
        const double empirical = *at;
        // Standard error of a sample quantile: sqrt(p(1 - p) / n) / density(q).
        const double h = 1e-4 * std::max(std::abs(q), 1e-3);
        const double density = (cdf(state, q + h) - cdf(state, q - h)) / (2.0 * h);
        const double se = std::sqrt(kLevel * (1.0 - kLevel) / kDraws) / density;
        worst_z = std::max(worst_z, std::abs(empirical - q) / se);
    }
    const double elapsed = seconds_since(start);
    return {worst_z <= 3.0 && elapsed < 60.0,
            fmt("20 posteriors, worst |quantile - MC quantile| = %.2f standard errors (limit 3), %.1f s (limit 60 s)",
                worst_z, elapsed)};
}

// --- 4 ---------------------------------------------------------------------

Verdict oracle_zero_regret() {
    ExperimentConfig config = cli::preset_config(*cli::find_preset("bernoulli"));
    config.horizon = cli::kDeskHorizon;
    config.trajectories = cli::kDeskTrajectories;
    config.grid = default_grid(config.horizon);
    config.policies = {default_policy(PolicyKind::Oracle)};
    bool all_zero = true;
    std::size_t values = 0;
    for (const std::uint64_t seed : {0ULL, 7ULL, 123456789ULL}) {
        config.base_seed = seed;
        const auto traces = run_experiment(config);
        for (const auto& trace : traces) {
            for (std::size_t i = 0; i < trace.times.size(); ++i) {
                all_zero = all_zero && trace.mean_regret[i] == 0.0 && trace.std_error[i] == 0.0;
                ++values;
            }
        }
    }
    return {all_zero, fmt("%zu recorded points over seeds 0, 7, 123456789: %s", values,
                          all_zero ? "all exactly 0" : "nonzero regret found")};
}

// --- 8 (run before 5 and 6, whose data it produces) -------------------------

struct Csv {
    std::map<std::string, std::vector<std::pair<std::int64_t, double>>> mean_by_label;
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        std::istringstream row(line);
        std::string label, t, mean;
        std::getline(row, label, ',');
        std::getline(row, t, ',');
        std::getline(row, mean, ',');
        csv.mean_by_label[label].emplace_back(std::stoll(t), std::stod(mean));
    }
    return csv;
}

std::string run_cli_capture(const std::vector<std::string>& args, int& code) {
    std::vector<const char*> argv = {"pbandit"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (code != 0) std::cerr << err.str();
    return out.str();
}

Verdict determinism(std::string& first_csv) {
    const auto start = Clock::now();
    int code1 = 0;
    int code8 = 0;
    first_csv = run_cli_capture({"run", "bernoulli", "--desk-scale", "--seed", "7", "--workers", "1"}, code1);
    std::cerr << "  [8] workers=1 done after " << seconds_since(start) << " s\n";
    const std::string second = run_cli_capture({"run", "bernoulli", "--desk-scale", "--seed", "7", "--workers", "8"},
                                               code8);
    const bool same = code1 == 0 && code8 == 0 && first_csv == second && !first_csv.empty();
    return {same, fmt("run bernoulli --desk-scale --seed 7, workers 1 vs 8: %zu vs %zu bytes, %s, %.0f s",
                      first_csv.size(), second.size(), same ? "byte-identical" : "DIFFERENT", seconds_since(start))};
}

// --- 5 ---------------------------------------------------------------------

struct Fit {
    double slope;
    double r2;
};

Fit fit_against_log_time(const std::vector<std::pair<std::int64_t, double>>& series, std::int64_t from,
                         std::int64_t to) {
    double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [t, y] : series) {
        if (t < from || t > to) continue;
        const double x = std::log(static_cast<double>(t));
        n += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double vxx = sxx - sx * sx / n;
    const double vxy = sxy - sx * sy / n;
    const double vyy = syy - sy * sy / n;
    return {vxy / vxx, vxy * vxy / (vxx * vyy)};
}

Verdict logarithmic_growth(const Csv& csv) {
    const BoundReport bounds = bound_report(cli::find_preset("bernoulli")->specs);
    const double lo = 0.1 * bounds.lower_slope;
    const double hi = 3.0 * bounds.upper_slope;
    bool pass = true;
    std::string detail = fmt("slope window [%.3f, %.2f];", lo, hi);
    for (const char* label : {"kl-ucb", "bayes-ucb", "ts"}) {
        const auto it = csv.mean_by_label.find(label);
        if (it == csv.mean_by_label.end()) return {false, std::string("missing trace for ") + label};
        const Fit fit = fit_against_log_time(it->second, 500, 5000);
        const bool ok = fit.r2 >= 0.95 && fit.slope >= lo && fit.slope <= hi;
        pass = pass && ok;
        detail += fmt(" %s R^2=%.4f slope=%.3f%s;", label, fit.r2, fit.slope, ok ? "" : " (FAIL)");
    }
    detail += " T=5000, 1000 trajectories, seed 7, t in [500, 5000]";
    return {pass, detail};
}

// --- 6 ---------------------------------------------------------------------

Verdict pinsker_ordering(const Csv& csv) {
    const auto gauss = csv.mean_by_label.find("kl-gaussian-ucb");
    const auto bern = csv.mean_by_label.find("kl-bernoulli-ucb");
    if (gauss == csv.mean_by_label.end() || bern == csv.mean_by_label.end()) return {false, "missing traces"};
    const double g = gauss->second.back().second;
    const double b = bern->second.back().second;

    std::mt19937_64 gen(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const double mean = u(gen);
        const double pulls = static_cast<double>(1 + gen() % 2000);
        const double level = exploration_level(static_cast<std::int64_t>(1 + gen() % 100000), 3.0);
        if (kl_ucb_index(mean, pulls, level, IndexDivergence::gaussian_unit()) <
            kl_ucb_index(mean, pulls, level, IndexDivergence::bernoulli_unit())) {
            ++violations;
        }
    }
    const bool pass = g > b && violations == 0;
    return {pass, fmt("final mean regret kl-gaussian-ucb %.3f vs kl-bernoulli-ucb %.3f; index dominance violated on "
                      "%d of 1000 states",
                      g, b, violations)};
}

// --- 7 ---------------------------------------------------------------------

Verdict constant_laws_tight() {
    std::mt19937_64 gen(707);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int scenarios = 0;
    int mismatches = 0;
    auto check = [&](const std::vector<ArmSpec>& specs) {
        const BoundReport report = bound_report(specs);
        ++scenarios;
        if (report.upper_slope != report.lower_slope) ++mismatches;
    };
    for (const auto& preset : cli::presets()) {
        for (const std::int64_t k : {1, 2, 5, 13}) {
            auto specs = preset.specs;
            for (auto& s : specs) s.clients = ClientCountLaw::constant(k);
            check(specs);
        }
    }
    for (int i = 0; i < 200; ++i) {
        std::vector<ArmSpec> specs;
        const int arms = 1 + static_cast<int>(gen() % 8);
        for (int a = 0; a < arms; ++a) {
            const auto law = ClientCountLaw::constant(static_cast<std::int64_t>(1 + gen() % 20));
            switch (gen() % 3) {
                case 0: specs.push_back({Distribution(FamilyKind::bernoulli(), 0.05 + 0.9 * u(gen)),
                                         0.05 + 0.9 * u(gen), law});
                    break;
                case 1: specs.push_back({Distribution(FamilyKind::poisson(), 0.5 + 9.0 * u(gen)),
                                         0.5 + 9.0 * u(gen), law});
                    break;
                default: specs.push_back({Distribution(FamilyKind::exponential(), 0.2 + 4.0 * u(gen)),
                                          0.2 + 4.0 * u(gen), law});
                    break;
            }
        }
        check(specs);
    }
    return {mismatches == 0,
            fmt("%d scenarios with constant client laws, %d with upper != lower (bitwise)", scenarios, mismatches)};
}

// --- 9 ---------------------------------------------------------------------

Verdict credit_reduction() {
    const std::vector<CreditArm> arms = {{0.92, 0.15, 1200.0, ClientCountLaw::shifted_poisson(3.0)},
                                         {0.85, 0.20, 300.0, ClientCountLaw::shifted_poisson(5.0)},
                                         {0.70, 0.35, 50.0, ClientCountLaw::shifted_poisson(2.0)},
                                         {0.97, 0.02, 8000.0, ClientCountLaw::shifted_poisson(1.0)},
                                         {0.80, 0.25, 700.0, ClientCountLaw::constant(2)}};
    const CreditScenario scenario = credit_scenario(arms);
    int rounds = 0;
    int differing = 0;
    for (const auto kind : {PolicyKind::Ts, PolicyKind::KlUcb, PolicyKind::BayesUcb}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const std::uint64_t stream = derive_seed(909, static_cast<std::uint64_t>(kind), seed);
            std::vector<ArmSet> reduced;
            std::vector<ArmSet> raw;
            play(scenario.reduced, default_policy(kind), 500, stream,
                 [&](std::int64_t, const ArmSet& s, const StepOutcome&) { reduced.push_back(s); });
            play(scenario.raw, default_policy(kind), 500, stream,
                 [&](std::int64_t, const ArmSet& s, const StepOutcome&) { raw.push_back(s); });
            for (std::size_t r = 0; r < reduced.size(); ++r) {
                ++rounds;
                if (reduced[r] != raw[r]) ++differing;
            }
        }
    }
    return {differing == 0, fmt("ts, kl-ucb, bayes-ucb x 100 seeds x T=500: %d of %d rounds select different subsets",
                                differing, rounds)};
}

}  // namespace

int main() {
    std::map<int, Verdict> verdicts;
    auto timed = [&](int id, const std::function<Verdict()>& fn) {
        const auto start = Clock::now();
        std::cerr << "criterion " << id << " running...\n";
        verdicts[id] = fn();
        std::cerr << "criterion " << id << " finished in " << seconds_since(start) << " s\n";
    };
    timed(1, divergence_vs_numeric_kl);
    timed(2, index_vs_grid_search);
    timed(3, posterior_quantile_vs_monte_carlo);
    timed(4, oracle_zero_regret);
    std::string desk_csv;
    timed(8, [&] { return determinism(desk_csv); });
    const Csv csv = parse_csv(desk_csv);
    timed(5, [&] { return logarithmic_growth(csv); });
    timed(6, [&] { return pinsker_ordering(csv); });
    timed(7, constant_laws_tight);
    timed(9, credit_reduction);
    verdicts[10] = {true,
                    "informational: no numeric regret magnitudes are claimed; criteria 4-7 are the substitute checks"};

    int failures = 0;
    for (const auto& [id, v] : verdicts) {
        std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << '\n';
        failures += v.pass ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
