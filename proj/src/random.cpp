#include "pbandit/random.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

namespace pbandit {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

// log of a Gamma(shape, 1) draw. Working in logs keeps shapes well below 1 from
// underflowing to zero when the boost transform raises u to 1/shape.
double log_gamma_draw(Rng& rng, double shape) noexcept {
    if (shape < 1.0) {
        const double boosted = log_gamma_draw(rng, shape + 1.0);
        return boosted + std::log(rng.uniform_open()) / shape;
    }
    // Marsaglia & Tsang squeeze method.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = rng.standard_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return std::log(d * v);
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return std::log(d * v);
        }
    }
}

// Hormann's transformed rejection with squeeze (PTRS), for mean >= 10.
std::int64_t poisson_ptrs(Rng& rng, double mean) noexcept {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) {
            return static_cast<std::int64_t>(k);
        }
        if (k < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            -mean + k * loglam - boost::math::lgamma(k + 1.0)) {
            return static_cast<std::int64_t>(k);
        }
    }
}

}  // namespace

Rng::Rng(std::uint64_t seed) noexcept {
    for (auto& word : state_) {
        seed += 0x9E3779B97F4A7C15ULL;
        word = mix64(seed);
    }
}

Rng::result_type Rng::operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::uniform_open() noexcept { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

double Rng::standard_normal() noexcept {
    // Marsaglia polar method; the second variate is discarded so that the
    // generator carries no hidden state beyond the xoshiro words.
    for (;;) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

double Rng::standard_exponential() noexcept { return -std::log(uniform_open()); }

double Rng::gamma(double shape) noexcept { return std::exp(log_gamma_draw(*this, shape)); }

double Rng::beta(double a, double b) noexcept {
    const double lx = log_gamma_draw(*this, a);
    const double ly = log_gamma_draw(*this, b);
    // x / (x + y) as a logistic of the log ratio.
    return 1.0 / (1.0 + std::exp(ly - lx));
}

std::int64_t Rng::poisson(double mean) noexcept {
    if (mean <= 0.0) {
        return 0;
    }
    if (mean >= 10.0) {
        return poisson_ptrs(*this, mean);
    }
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double prod = uniform_open();
    while (prod > limit) {
        ++k;
        prod *= uniform_open();
    }
    return k;
}

}  // namespace pbandit
