// Seeded deterministic RNG. Distribution mapping is written out explicitly so
// emitted samples are bit-identical across standard library implementations.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pwave {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // uniform in [0, 1)
    double uniform() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller (fixed algorithm, no cached state)
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // derive an independent stream (for per-subtask seeding)
    Rng fork(std::uint64_t salt) {
        return Rng(bits() ^ (salt * 0x9e3779b97f4a7c15ULL));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace pwave
