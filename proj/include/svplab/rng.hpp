#ifndef SVPLAB_RNG_HPP
#define SVPLAB_RNG_HPP

#include <cstdint>
#include <string_view>

namespace svplab {

// Counter-based splittable PRNG (splitmix64 core). Chosen over the standard
// library engines because its output is fully specified, so dataset files are
// reproducible across platforms and standard library versions. The algorithm
// identifier below is stored in every dataset file.
inline constexpr std::string_view kPrngId = "splitmix64-v1";

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, bound) via rejection; exact and portable.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

// Deterministically derives an independent stream seed from (key, index).
// Used to give every instance / restart / evaluation its own stream.
inline std::uint64_t derive_seed(std::uint64_t key, std::uint64_t index) {
    SplitMix64 g(key ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    g.next_u64();
    return g.next_u64();
}

}  // namespace svplab

#endif
