#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <geocodec/geo.hpp>

namespace geocodec::detail {

// Deterministic RNG used by the registry allocator and the evaluation
// harness. std::mt19937_64 has a standard-pinned output sequence; the
// distribution transforms live here because the <random> distribution
// classes are implementation-defined and would break seed reproducibility.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() {
        ++draws_;
        return engine_();
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform integer in [0, n). Rejection sampling keeps the result unbiased
    // and identical on every platform.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller.
    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Uniform on the sphere (cosine-weighted latitude).
    GeoPoint point_on_sphere() {
        const double z = 2.0 * uniform() - 1.0;
        const double lat = std::asin(std::max(-1.0, std::min(1.0, z))) * (180.0 / 3.14159265358979323846);
        const double lng = uniform() * 360.0 - 180.0;
        return {lat, lng};
    }

    std::uint64_t draws() const { return draws_; }
    void discard(std::uint64_t n) {
        engine_.discard(n);
        draws_ += n;
    }

  private:
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

// Per-trial seed derivation (splitmix64 step) so trials stay independent of
// evaluation order.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace geocodec::detail
