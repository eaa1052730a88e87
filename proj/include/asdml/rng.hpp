#pragma once

#include <cstdint>
#include <vector>

namespace asdml {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 +
// std::shuffle because the standard distributions are implementation
// defined; this generator produces the same stream on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of randomness.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, bound) via rejection sampling.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

// In-place Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void fisher_yates(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace asdml
