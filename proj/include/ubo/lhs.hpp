#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "ubo/math.hpp"
#include "ubo/rng.hpp"

namespace ubo {

/// Latin hypercube design of p points in [0,1]^d: per dimension, a random
/// permutation of the p strata with a uniform jitter inside each stratum,
/// so every stratum [j/p, (j+1)/p) receives exactly one coordinate.
inline Mat latin_hypercube(int p, int d, Rng& rng) {
    if (p < 1 || d < 1) {
        throw std::invalid_argument("latin_hypercube: p and d must be >= 1");
    }
    Mat design(p, d);
    std::vector<int> perm(static_cast<std::size_t>(p));
    for (int k = 0; k < d; ++k) {
        std::iota(perm.begin(), perm.end(), 0);
        for (int j = p - 1; j > 0; --j) {
            const auto swap_with =
                static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
            std::swap(perm[static_cast<std::size_t>(j)],
                      perm[static_cast<std::size_t>(swap_with)]);
        }
        for (int j = 0; j < p; ++j) {
            design(j, k) = (static_cast<double>(perm[static_cast<std::size_t>(j)]) +
                            rng.uniform01()) /
                           static_cast<double>(p);
        }
    }
    return design;
}

}  // namespace ubo
