#ifndef FPSMAX_RNG_HPP
#define FPSMAX_RNG_HPP

#include <cstdint>
#include <random>

namespace fpsmax {

/// Seedable, platform-independent random source.
///
/// Raw output is std::mt19937_64 seeded with the 64-bit seed, whose sequence
/// is fixed by the C++ standard. Bounded integers use Lemire's
/// multiply-shift with rejection and probabilities compare the top 53 bits,
/// so derived sequences do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }
    bool coin() { return (next() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace fpsmax

#endif
