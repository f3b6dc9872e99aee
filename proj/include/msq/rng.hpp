#pragma once

// Seeded randomness with a pinned bit stream. The mt19937_64 engine is
// fully specified by the standard; the distributions here are hand-rolled
// (uniform via the top 53 bits, normal via Box-Muller) so that a given seed
// produces the same values on every toolchain.

#include <cmath>
#include <cstdint>
#include <random>

namespace msq {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Sub-seed splitting rule: child `task_index` of `seed` is
// splitmix64(seed + (task_index + 1) * golden gamma).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task_index) {
    return splitmix64(seed + (task_index + 1) * 0x9E3779B97F4A7C15ULL);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; the pair is consumed in order.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // Shift into (0, 1] so the log is finite.
        double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace msq
