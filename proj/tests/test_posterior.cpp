#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pbandit/errors.hpp"
#include "pbandit/posterior.hpp"

namespace pbandit {
namespace {

TEST(Prior, JeffreysAndUniform) {
    const auto bern = prior(FamilyKind::bernoulli(), PriorKind::jeffreys());
    EXPECT_EQ(bern.param_a(), 0.5);
    EXPECT_EQ(bern.param_b(), 0.5);
    EXPECT_TRUE(bern.proper());

    const auto pois = prior(FamilyKind::poisson(), PriorKind::jeffreys());
    EXPECT_EQ(pois.param_a(), 0.5);
    EXPECT_EQ(pois.param_b(), 0.0);
    EXPECT_FALSE(pois.proper());

    const auto expo = prior(FamilyKind::exponential(), PriorKind::jeffreys());
    EXPECT_EQ(expo.param_a(), 0.0);
    EXPECT_EQ(expo.param_b(), 0.0);
    EXPECT_FALSE(expo.proper());

    EXPECT_FALSE(prior(FamilyKind::gaussian(1.0), PriorKind::jeffreys()).proper());

    const auto uni = prior(FamilyKind::bernoulli(), PriorKind::uniform());
    EXPECT_EQ(uni.param_a(), 1.0);
    EXPECT_EQ(uni.param_b(), 1.0);
    EXPECT_EQ(uni.count(), 0);
    EXPECT_EQ(uni.sum(), 0.0);
}

TEST(Prior, CustomRejectsNegative) {
    EXPECT_THROW(prior(FamilyKind::bernoulli(), PriorKind::custom(-1.0, 1.0)), DomainError);
    EXPECT_THROW(prior(FamilyKind::poisson(), PriorKind::custom(1.0, -0.5)), DomainError);
    EXPECT_THROW(prior(FamilyKind::gaussian(1.0), PriorKind::custom(0.0, 0.0)), DomainError);
    EXPECT_NO_THROW(prior(FamilyKind::gaussian(1.0), PriorKind::custom(-3.0, 2.0)));
}

TEST(Prior, PoissonJeffreysMatchesGridBayesRule) {
    // prior density ~ theta^-1/2; one observation x = 3 with likelihood e^-theta theta^3.
    const auto post = update(prior(FamilyKind::poisson(), PriorKind::jeffreys()), 3.0);
    ASSERT_TRUE(post.proper());
    const int n = 400000;
    const double hi = 40.0;
    const double h = hi / n;
    std::vector<double> density(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double theta = (i + 0.5) * h;
        density[i] = std::pow(theta, -0.5) * std::exp(-theta) * theta * theta * theta;
        total += density[i];
    }
    double running = 0.0;
    int checked = 0;
    for (int i = 0; i < n; ++i) {
        running += density[i];
        if ((i + 1) % 40000 == 0) {
            const double theta = (i + 1) * h;
            EXPECT_NEAR(running / total, cdf(post, theta), 1e-6) << theta;
            ++checked;
        }
    }
    EXPECT_EQ(checked, 10);
}

TEST(Update, ConjugateRules) {
    const auto b = update(prior(FamilyKind::bernoulli(), PriorKind::jeffreys()), 1.0);
    EXPECT_EQ(b.param_a(), 1.5);
    EXPECT_EQ(b.param_b(), 0.5);

    const auto p = update(prior(FamilyKind::poisson(), PriorKind::jeffreys()), 3.0);
    EXPECT_EQ(p.param_a(), 3.5);
    EXPECT_EQ(p.param_b(), 1.0);

    const auto c = update(prior(FamilyKind::bernoulli(), PriorKind::custom(2.0, 3.0)), 0.0);
    EXPECT_EQ(c.param_a(), 2.0);
    EXPECT_EQ(c.param_b(), 4.0);

    auto e = prior(FamilyKind::exponential(), PriorKind::jeffreys());
    e = update(update(e, 0.5), 2.0);
    EXPECT_EQ(e.param_a(), 2.0);
    EXPECT_EQ(e.param_b(), 2.5);
    EXPECT_EQ(e.count(), 2);
    EXPECT_EQ(e.sum(), 2.5);
}

TEST(Update, GaussianKnownVariance) {
    auto flat = prior(FamilyKind::gaussian(4.0), PriorKind::jeffreys());
    flat = update(update(flat, 1.0), 3.0);
    EXPECT_DOUBLE_EQ(flat.param_a(), 2.0);
    EXPECT_DOUBLE_EQ(flat.param_b(), 2.0);

    // Normal(0, 1) prior, sigma^2 = 1, one observation 2: precision 2, mean 1.
    auto normal = update(prior(FamilyKind::gaussian(1.0), PriorKind::custom(0.0, 1.0)), 2.0);
    EXPECT_DOUBLE_EQ(normal.param_a(), 1.0);
    EXPECT_DOUBLE_EQ(normal.param_b(), 0.5);
}

TEST(Update, RejectsOutsideSupport) {
    const auto bern = prior(FamilyKind::bernoulli(), PriorKind::jeffreys());
    EXPECT_THROW(update(bern, 0.5), DomainError);
    EXPECT_THROW(update(prior(FamilyKind::poisson(), PriorKind::jeffreys()), 1.5), DomainError);
    EXPECT_THROW(update(prior(FamilyKind::poisson(), PriorKind::jeffreys()), -1.0), DomainError);
    EXPECT_THROW(update(prior(FamilyKind::exponential(), PriorKind::jeffreys()), 0.0), DomainError);
    EXPECT_NO_THROW(update(prior(FamilyKind::gaussian(1.0), PriorKind::jeffreys()), -7.25));
}

TEST(Update, ExchangeableUnderPermutation) {
    std::mt19937_64 gen(5);
    struct Case {
        FamilyKind family;
        std::function<double(std::mt19937_64&)> draw;
    };
    // Continuous draws are rounded to multiples of 2^-20 so that every summation order is exact.
    auto dyadic = [](double x) { return std::ldexp(std::round(std::ldexp(x, 20)), -20); };
    const std::vector<Case> cases = {
        {FamilyKind::bernoulli(), [](auto& g) { return static_cast<double>(g() % 2); }},
        {FamilyKind::poisson(), [](auto& g) { return static_cast<double>(g() % 7); }},
        {FamilyKind::exponential(),
         [&](auto& g) { return dyadic(std::uniform_real_distribution<double>(0.01, 5.0)(g)); }},
        {FamilyKind::gaussian(1.0),
         [&](auto& g) { return dyadic(std::uniform_real_distribution<double>(-5.0, 5.0)(g)); }},
    };
    for (const auto& c : cases) {
        std::vector<double> xs(200);
        for (auto& x : xs) x = c.draw(gen);
        auto forward = prior(c.family, PriorKind::jeffreys());
        for (const double x : xs) forward.update(x);
        std::shuffle(xs.begin(), xs.end(), gen);
        auto shuffled = prior(c.family, PriorKind::jeffreys());
        for (const double x : xs) shuffled.update(x);
        EXPECT_EQ(forward, shuffled) << c.family.name();
    }
}

TEST(Quantile, Examples) {
    const auto uniform = prior(FamilyKind::bernoulli(), PriorKind::uniform());
    EXPECT_NEAR(quantile(uniform, 0.5), 0.5, 1e-14);
    const auto beta21 = prior(FamilyKind::bernoulli(), PriorKind::custom(2.0, 1.0));
    EXPECT_NEAR(quantile(beta21, 0.5), std::sqrt(0.5), 1e-14);
    // Gamma(1, 1) on an Exponential arm's rate: the 0.95 rate quantile is -log 0.05,
    // so the 0.05 quantile of the mean is its reciprocal.
    const auto expo = prior(FamilyKind::exponential(), PriorKind::custom(1.0, 1.0));
    EXPECT_NEAR(1.0 / quantile(expo, 0.05), 2.99573227355399099, 1e-12);
}

TEST(Quantile, ImproperIsStateError) {
    const auto pois = prior(FamilyKind::poisson(), PriorKind::jeffreys());
    EXPECT_THROW(quantile(pois, 0.5), StateError);
    EXPECT_THROW(cdf(pois, 1.0), StateError);
    Rng rng(1);
    EXPECT_THROW(sample_mean(pois, rng), StateError);
    try {
        quantile(prior(FamilyKind::exponential(), PriorKind::jeffreys()), 0.5);
    } catch (const StateError& e) {
        EXPECT_NE(std::string(e.what()).find("exploration"), std::string::npos);
    }
}

TEST(Cdf, Examples) {
    EXPECT_NEAR(cdf(prior(FamilyKind::bernoulli(), PriorKind::uniform()), 0.25), 0.25, 1e-15);
    EXPECT_NEAR(cdf(prior(FamilyKind::poisson(), PriorKind::custom(1.0, 1.0)), std::log(2.0)), 0.5, 1e-15);
    EXPECT_NEAR(cdf(prior(FamilyKind::bernoulli(), PriorKind::jeffreys()), 0.5), 0.5, 1e-14);
    const auto state = prior(FamilyKind::bernoulli(), PriorKind::custom(3.0, 4.0));
    EXPECT_EQ(cdf(state, 0.0), 0.0);
    EXPECT_EQ(cdf(state, 1.0), 1.0);
}

std::vector<PosteriorState> sample_states() {
    std::vector<PosteriorState> out;
    out.push_back(prior(FamilyKind::bernoulli(), PriorKind::custom(0.5, 12.5)));
    out.push_back(prior(FamilyKind::bernoulli(), PriorKind::custom(40.0, 3.0)));
    out.push_back(prior(FamilyKind::poisson(), PriorKind::custom(3.5, 2.0)));
    out.push_back(prior(FamilyKind::poisson(), PriorKind::custom(0.7, 0.1)));
    out.push_back(prior(FamilyKind::exponential(), PriorKind::custom(5.0, 12.0)));
    out.push_back(prior(FamilyKind::exponential(), PriorKind::custom(1.2, 0.3)));
    out.push_back(prior(FamilyKind::gaussian(2.0), PriorKind::custom(-1.0, 0.7)));
    return out;
}

TEST(Quantile, CdfRoundTripAndMonotone) {
    for (const auto& state : sample_states()) {
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 999; ++i) {
            const double p = i / 1000.0;
            const double q = quantile(state, p);
            EXPECT_LE(std::fabs(cdf(state, q) - p), 1e-9) << state.family().name() << " p=" << p;
            EXPECT_GE(q, prev);
            prev = q;
        }
    }
}

TEST(SampleMean, Examples) {
    Rng rng(31);
    constexpr int n = 1000000;
    const auto uniform = prior(FamilyKind::bernoulli(), PriorKind::uniform());
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += sample_mean(uniform, rng);
    EXPECT_NEAR(total / n, 0.5, 0.002);

    const auto tight = prior(FamilyKind::bernoulli(), PriorKind::custom(1e6, 1e6));
    for (int i = 0; i < 10000; ++i) ASSERT_NEAR(sample_mean(tight, rng), 0.5, 0.005);

    const auto gamma = prior(FamilyKind::poisson(), PriorKind::custom(2.0, 2.0));
    total = 0.0;
    for (int i = 0; i < n; ++i) total += sample_mean(gamma, rng);
    EXPECT_NEAR(total / n, 1.0, 0.005);
}

TEST(SampleMean, EmpiricalQuantilesMatchCdf) {
    Rng rng(32);
    constexpr int n = 200000;
    for (const auto& state : sample_states()) {
        std::vector<double> draws(n);
        for (auto& d : draws) d = sample_mean(state, rng);
        std::sort(draws.begin(), draws.end());
        for (const double p : {0.1, 0.5, 0.9}) {
            const double empirical = draws[static_cast<std::size_t>(p * n)];
            EXPECT_NEAR(cdf(state, empirical), p, 4.0 * std::sqrt(p * (1 - p) / n)) << state.family().name();
        }
    }
}

TEST(Posterior, ConsistentAfterManyObservations) {
    struct Case {
        Distribution dist;
    };
    const std::vector<Distribution> truths = {Distribution(FamilyKind::bernoulli(), 0.3),
                                              Distribution(FamilyKind::poisson(), 2.5),
                                              Distribution(FamilyKind::exponential(), 1.5),
                                              Distribution(FamilyKind::gaussian(1.0), -0.4)};
    for (const auto& truth : truths) {
        for (const std::uint64_t seed : {1u, 2u, 3u}) {
            Rng rng(seed);
            auto state = prior(truth.family(), PriorKind::jeffreys());
            for (int i = 0; i < 100000; ++i) state.update(sample(truth, rng));
            const double lo = quantile(state, 0.001);
            const double hi = quantile(state, 0.999);
            EXPECT_LE(hi - lo, 0.05) << truth.family().name();
            EXPECT_LE(lo, truth.mean());
            EXPECT_GE(hi, truth.mean());
        }
    }
}

}  // namespace
}  // namespace pbandit
