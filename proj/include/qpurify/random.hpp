#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "qpurify/core.hpp"

namespace qpurify {

/// Counter-based SplitMix64 stream.
///
/// Draw k (k = 0, 1, ...) is mix(seed + (k + 1) * 0x9E3779B97F4A7C15) with the
/// SplitMix64 finalizer
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
/// so any draw can be reproduced from (seed, k) alone, in any language with
/// wrapping 64-bit unsigned arithmetic.
class SplitMix64 {
   public:
    explicit SplitMix64(uint64_t seed) : seed_(seed) {}

    uint64_t next();
    uint64_t counter() const noexcept { return counter_; }

    /// (bits >> 11) * 2^-53, in [0, 1).
    double uniform();

    /// Two independent standard normals from one Box-Muller pair:
    /// u1 = 1 - uniform(), u2 = uniform(), r = sqrt(-2 ln u1),
    /// result = (r cos(2 pi u2), r sin(2 pi u2)).
    std::pair<double, double> normal_pair();

   private:
    uint64_t seed_;
    uint64_t counter_ = 0;
};

/// N x cols matrix whose entries are re + i im, with (re, im) one Box-Muller
/// pair, filled row-major.
CMatrix ginibre_matrix(size_t rows, size_t cols, SplitMix64 &rng);

/// G G^dagger / Tr(G G^dagger) with G an N x rank Ginibre draw (rank = N when
/// unset). Throws BadShape unless 1 <= rank <= N.
DensityMatrix random_density(const QuditShape &shape, uint64_t seed, std::optional<size_t> rank = std::nullopt);

/// Unitary from modified Gram-Schmidt on the columns of a Ginibre draw.
CMatrix random_unitary(size_t dim, SplitMix64 &rng);

/// Tr(rho^2).
double purity(const CMatrix &rho);

}  // namespace qpurify
