#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace seqbell::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna), seeded through the splitmix64 finalizer.
// Satisfies std::uniform_random_bit_generator, so the standard <random>
// distributions run on top of it.
class Xoshiro256pp {
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& w : s_) {
            z = mix64(z);
            w = z;
        }
        s_[0] |= 1ULL;  // all-zero state is the lone invalid one
    }

    // Independent per-cycle stream i of a run keyed by master_seed. The
    // derivation is a pure function of (master_seed, i): ensembles replay
    // identically no matter how cycles are distributed over workers.
    static Xoshiro256pp substream(std::uint64_t master_seed, std::uint64_t index) {
        return Xoshiro256pp(mix64(master_seed) ^ mix64(index * kGolden + 0x5851f42d4c957f2dULL));
    }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // One fair bit (top bit of the next word).
    bool coin() { return ((*this)() >> 63) != 0; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

using Stream = Xoshiro256pp;

}  // namespace seqbell::rng
