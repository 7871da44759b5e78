#pragma once

// Deterministic seeded randomness.  Draws go through raw engine words only, so
// sequences are reproducible across platforms and standard libraries.

#include <cmath>
#include <cstdint>
#include <random>

namespace blindcomp {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., n-1}, rejection sampled to avoid modulo bias.
    int uniform_int(int n) {
        const auto un = static_cast<std::uint64_t>(n);
        const std::uint64_t bound = ~std::uint64_t{0} - ~std::uint64_t{0} % un;
        std::uint64_t x = engine_();
        while (x >= bound) x = engine_();
        return static_cast<int>(x % un);
    }

    // Exponential(1) via inverse CDF; used for Dirichlet-style simplex draws.
    double exponential() {
        double u = uniform01();
        while (u == 0.0) u = uniform01();
        return -std::log(u);
    }

    // Independent generator for stream `k`; disjoint seeds for parallel work.
    Rng fork(std::uint64_t k) const {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (k + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace blindcomp
