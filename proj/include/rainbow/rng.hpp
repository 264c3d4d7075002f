#pragma once

// SplitMix64 with its own bounded sampling, so that a seed produces the same
// stream on every platform and standard library.

#include <cstdint>

namespace rainbow {

class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    constexpr auto next() -> std::uint64_t
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) by rejection; bound must be positive.
    constexpr auto below(std::uint64_t bound) -> std::uint64_t
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x = next();
        while (x >= limit)
            x = next();
        return x % bound;
    }

    /// True with probability num/den.
    constexpr auto chance(std::uint64_t num, std::uint64_t den) -> bool { return below(den) < num; }

    /// Independent stream for item `index`, stable under reordering of work.
    static constexpr auto derive(std::uint64_t seed, std::uint64_t index) -> SplitMix64
    {
        SplitMix64 mix(seed ^ (index * 0xd1b54a32d192ed03ULL));
        return SplitMix64(mix.next());
    }

private:
    std::uint64_t state_;
};

}  // namespace rainbow
