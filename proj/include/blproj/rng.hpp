#pragma once

#include <cmath>
#include <cstdint>

namespace blproj {

/// splitmix64: the project-wide random number generator. 64-bit state,
/// one addition and three xor-shift-multiply rounds per output
/// (Steele, Lea & Flood, "Fast splittable pseudorandom number generators").
/// Chosen over std::mt19937 because the full state transition fits in a
/// dozen lines and produces the same stream on every platform, which the
/// golden-file and determinism tests rely on.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// Deterministic sampling front-end over SplitMix64. Uniform draws take one
/// u64; gaussian draws use Box-Muller, consuming two u64 per pair with the
/// second value cached. std::normal_distribution is avoided on purpose: its
/// algorithm is implementation-defined, this one is pinned.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_.next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite.
        const double u1 = static_cast<double>((gen_.next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t next_u64() { return gen_.next_u64(); }

  private:
    SplitMix64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Derives an independent stream seed from a base seed and up to two
/// indices (benchmark repeats, per-size matrices, ...).
inline std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    SplitMix64 g(seed);
    g.state ^= g.next_u64() + a;
    g.state ^= g.next_u64() + (b << 1);
    return g.next_u64();
}

} // namespace blproj
