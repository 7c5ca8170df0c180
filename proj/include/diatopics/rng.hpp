#pragma once

#include <cstdint>
#include <string_view>

namespace diatopics {

// Portable deterministic RNG used everywhere randomness is needed.
//
// The generator is xoshiro256** (Blackman/Vigna), seeded through splitmix64
// as its authors recommend. Only fixed-width integer arithmetic and IEEE-754
// multiplies are involved, so sequences are bit-identical across platforms.
// Streams are derived by hashing (seed, document id, pass) together, which
// gives every document its own independent stream.

inline uint64_t splitmix64_next(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// 64-bit FNV-1a, used to key per-document RNG streams by document id.
inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Order-sensitive combination of two 64-bit values into a stream seed.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t state = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64_next(state);
}

class Xoshiro256ss {
public:
    explicit Xoshiro256ss(uint64_t seed) {
        for (auto& word : state_) word = splitmix64_next(seed);
    }

    uint64_t next() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 bits of precision.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n) via Lemire's multiply-shift reduction.
    uint32_t next_below(uint32_t n) {
        const uint64_t x = next() >> 32;
        return static_cast<uint32_t>((x * static_cast<uint64_t>(n)) >> 32);
    }

private:
    static uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    uint64_t state_[4];
};

}  // namespace diatopics
