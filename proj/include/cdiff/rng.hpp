#ifndef CDIFF_RNG_HPP
#define CDIFF_RNG_HPP

#include <cstdint>

namespace cdiff::rng {

// SplitMix64 finalizer: a high-quality 64 -> 64 bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ mix64(b));
}

// Counter-based stream keyed by (seed, a, b). Draws are a fixed function of
// the key and the draw counter, so results do not depend on scheduling and
// streams for distinct particles/steps are independent by construction.
class Stream {
  public:
    explicit Stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0)
        : state_(mix64(mix64(mix64(seed) ^ a) ^ b)) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); multiply-shift reduction (bias < n/2^64).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

  private:
    std::uint64_t state_;
};

} // namespace cdiff::rng

#endif
