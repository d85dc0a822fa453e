#pragma once

#include <cstdint>

namespace rgr {

// splitmix64. Small, fast and portable; std:: distributions are
// implementation-defined, which would break cross-platform determinism.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~0ULL) / n);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    // Uniform in [0,1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller.
    double next_normal();

  private:
    std::uint64_t state_;
};

// Derive an independent stream for a numbered sub-task (Monte Carlo pass,
// benchmark scene). Pure mixing, so sub-tasks may run in any order.
Rng derived_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace rgr
