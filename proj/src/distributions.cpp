#include "colme/distributions.hpp"

#include <cmath>
#include <numbers>

namespace colme {

void validate_class_spec(const ClassSpec& spec) {
    if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) {
        throw config_error("class '" + spec.label + "': sigma must be >= 0 and finite");
    }
    if (!std::isfinite(spec.mean)) {
        throw config_error("class '" + spec.label + "': mean must be finite");
    }
    if (spec.family == Family::UniformSum && spec.uniform_k < 1) {
        throw config_error("class '" + spec.label + "': uniform_sum needs k >= 1");
    }
}

double theoretical_kurtosis(Family family, int uniform_k) {
    switch (family) {
    case Family::Gaussian:
        return 3.0;
    case Family::ScaledRademacher:
        return 1.0;
    case Family::UniformSum:
        return 3.0 - 6.0 / (5.0 * uniform_k);
    }
    return 3.0;
}

Moments theoretical_moments(const ClassSpec& spec) {
    const double kappa = theoretical_kurtosis(spec.family, spec.uniform_k);
    // difference of two i.i.d. copies: excess kurtosis halves (cumulants add,
    // variance doubles)
    const double kappa_d = 3.0 + (kappa - 3.0) / 2.0;
    return Moments{spec.mean, spec.sigma, kappa, kappa_d};
}

std::string family_to_string(Family family, int uniform_k) {
    switch (family) {
    case Family::Gaussian:
        return "gaussian";
    case Family::ScaledRademacher:
        return "rademacher";
    case Family::UniformSum:
        return "uniform_sum:" + std::to_string(uniform_k);
    }
    return "gaussian";
}

void family_from_string(const std::string& text, Family& family, int& uniform_k) {
    uniform_k = 1;
    if (text == "gaussian") {
        family = Family::Gaussian;
        return;
    }
    if (text == "rademacher") {
        family = Family::ScaledRademacher;
        return;
    }
    if (text.rfind("uniform_sum:", 0) == 0) {
        family = Family::UniformSum;
        try {
            uniform_k = std::stoi(text.substr(12));
        } catch (const std::exception&) {
            throw config_error("bad uniform_sum count in family '" + text + "'");
        }
        if (uniform_k < 1) {
            throw config_error("uniform_sum needs k >= 1, got '" + text + "'");
        }
        return;
    }
    throw config_error("unknown family '" + text + "' (expected gaussian | rademacher | uniform_sum:<k>)");
}

std::uint64_t Rng::mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Rng Rng::for_agent(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t agent) {
    std::uint64_t s = mix(master_seed);
    s = mix(s ^ (0x9E3779B97F4A7C15ull * (realization + 1)));
    s = mix(s ^ (0xC2B2AE3D27D4EB4Full * (agent + 1)));
    return Rng(s);
}

Rng Rng::for_stream(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t tag) {
    std::uint64_t s = mix(master_seed ^ 0xA0761D6478BD642Full);
    s = mix(s ^ (0x9E3779B97F4A7C15ull * (realization + 1)));
    s = mix(s ^ (0xE7037ED1A0B428DBull * (tag + 1)));
    return Rng(s);
}

double Rng::gaussian() {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::bounded(std::uint64_t n) {
    // multiply-shift; bias is O(n / 2^64)
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

double sample(const ClassSpec& spec, Rng& rng) {
    switch (spec.family) {
    case Family::Gaussian:
        return spec.mean + spec.sigma * rng.gaussian();
    case Family::ScaledRademacher:
        return (rng.next_u64() >> 63) ? spec.mean + spec.sigma : spec.mean - spec.sigma;
    case Family::UniformSum: {
        // k uniforms on [-a, a] with a chosen so the total variance is sigma^2
        const double a = spec.sigma * std::sqrt(3.0 / spec.uniform_k);
        double acc = 0.0;
        for (int i = 0; i < spec.uniform_k; ++i) {
            acc += (2.0 * rng.uniform01() - 1.0) * a;
        }
        return spec.mean + acc;
    }
    }
    return spec.mean;
}

} // namespace colme
