#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "colme/errors.hpp"

namespace colme {

enum class Family {
    Gaussian,
    ScaledRademacher,
    UniformSum,
};

/// One similarity class: all agents of the class draw i.i.d. samples with
/// mean `mean`, standard deviation `sigma` and the given distribution family.
struct ClassSpec {
    double mean = 0.0;
    double sigma = 1.0;
    Family family = Family::Gaussian;
    int uniform_k = 1; // number of uniform addends, UniformSum only
    std::string label;
};

/// Population moments of a class: mean, sigma, kurtosis of x, and kurtosis
/// of the successive difference d(t) = x(t) - x(t-1).
struct Moments {
    double mean;
    double sigma;
    double kappa;
    double kappa_d;
};

void validate_class_spec(const ClassSpec& spec);

double theoretical_kurtosis(Family family, int uniform_k);
Moments theoretical_moments(const ClassSpec& spec);

// "gaussian" | "rademacher" | "uniform_sum:<k>"
std::string family_to_string(Family family, int uniform_k);
void family_from_string(const std::string& text, Family& family, int& uniform_k);

/// Deterministic random stream. All transforms are explicit so a stream is
/// bit-reproducible for a given seed independent of the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(mix(seed)) {}

    /// Stream for one agent in one realization of one experiment.
    static Rng for_agent(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t agent);
    /// Infrastructure stream (graph wiring, bootstrap, ...), tag-separated
    /// from agent streams.
    static Rng for_stream(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t tag);

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_open01() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }
    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double gaussian();
    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t bounded(std::uint64_t n);

    static std::uint64_t mix(std::uint64_t x);

private:
    std::mt19937_64 gen_;
};

double sample(const ClassSpec& spec, Rng& rng);

} // namespace colme
