#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace ccg {

// Deterministic generator used everywhere randomness is needed.
//
// Algorithm: SplitMix64 (Steele, Lea, Flood 2014). One 64-bit word of
// state, identical output on every platform, trivial to port to other
// languages for log replay:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// Bounded draws use modulo reduction (bias is immaterial for the bounds
// this engine uses, all far below 2^32). Shuffling is a Fisher-Yates
// walk from the last index down, swapping with uniform(i + 1).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, bound). bound must be > 0.
    std::uint32_t uniform(std::uint32_t bound) {
        return static_cast<std::uint32_t>(next_u64() % bound);
    }

    double next_double() {  // [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform(static_cast<std::uint32_t>(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::uint64_t state() const { return state_; }
    void set_state(std::uint64_t s) { state_ = s; }

    bool operator==(const Rng&) const = default;

private:
    std::uint64_t state_;
};

// Stable seed derivation for child streams (match seeds, per-rollout
// streams, group shuffles). Folds each part into the state with one
// SplitMix64 step so any (base, parts...) tuple maps to a documented,
// reproducible seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
    Rng r(base);
    std::uint64_t h = r.next_u64();
    for (std::uint64_t p : parts) {
        Rng step(h ^ p);
        h = step.next_u64();
    }
    return h;
}

}  // namespace ccg
