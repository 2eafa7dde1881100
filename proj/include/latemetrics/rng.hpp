#pragma once

#include <cstdint>
#include <random>

namespace latemetrics {

// Deterministic random streams. mt19937_64's raw output sequence is fully
// specified by the standard; the transforms below avoid the std::*_distribution
// adapters, whose sequences are implementation-defined, so identical seeds
// give identical streams everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Exponential with the given rate (events per unit). Inverse CDF on a
    // (0, 1] uniform so the log argument never hits zero.
    double exponential(double rate);

    // Standard normal via Box-Muller. Draws two uniforms per call and keeps
    // no spare, so the stream position is a pure function of call count.
    double normal01();

    double lognormal(double mu_log, double sigma_log);

private:
    std::mt19937_64 gen_;
};

// Derives independent sub-seeds from one root seed (splitmix64 over the root
// xored with the stream index). Streams for different purposes never share a
// generator, so adding draws to one stage cannot shift another.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

}  // namespace latemetrics
