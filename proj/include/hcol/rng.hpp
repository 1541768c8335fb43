#pragma once

#include <cstdint>
#include <random>

namespace hcol {

/// mt19937_64 is fully specified by the standard, unlike the distributions, so
/// every sampler below draws raw words to stay reproducible across platforms.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection sampling. bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound)
{
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit)
            return x % bound;
    }
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

/// Bernoulli(num/den).
inline bool bernoulli(Rng& rng, std::uint64_t num, std::uint64_t den) { return uniform_below(rng, den) < num; }

} // namespace hcol
