#ifndef ARPSHIELD_RNG_HPP
#define ARPSHIELD_RNG_HPP

#include <cstdint>
#include <vector>

namespace arpshield {

// SplitMix64 (Steele, Lea & Flood; java.util.SplittableRandom's mixer).
// Chosen because the reference implementation is a dozen lines and the
// stream is reproducible on any platform, which the record-list
// determinism contract needs. Reports name the generator explicitly.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-enough draw in [0, bound). Modulo bias is irrelevant for
    // the tiny bounds used here (host picks, shuffle indices).
    std::uint64_t below(std::uint64_t bound)
    {
        return bound == 0 ? 0 : next() % bound;
    }

private:
    std::uint64_t state_;
};

inline constexpr const char* kGeneratorName = "splitmix64";

// Deterministic Fisher-Yates; std::shuffle is not pinned across
// standard library implementations.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, SplitMix64& rng)
{
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace arpshield

#endif  // ARPSHIELD_RNG_HPP
