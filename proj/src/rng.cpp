#include "latemetrics/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latemetrics {

double Rng::exponential(double rate) {
    if (rate <= 0) throw std::invalid_argument("exponential rate must be positive");
    return -std::log(1.0 - uniform01()) / rate;
}

double Rng::normal01() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::lognormal(double mu_log, double sigma_log) {
    return std::exp(mu_log + sigma_log * normal01());
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    // splitmix64 finalizer.
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace latemetrics
