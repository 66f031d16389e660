#include "qpurify/random.hpp"

#include <cmath>
#include <numbers>

namespace qpurify {

uint64_t SplitMix64::next() {
    uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::pair<double, double> SplitMix64::normal_pair() {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(angle), r * std::sin(angle)};
}

CMatrix ginibre_matrix(size_t rows, size_t cols, SplitMix64 &rng) {
    CMatrix g(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            auto [re, im] = rng.normal_pair();
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

DensityMatrix random_density(const QuditShape &shape, uint64_t seed, std::optional<size_t> rank) {
    size_t n = shape.dimension();
    size_t r = rank.value_or(n);
    if (r < 1 || r > n) {
        throw Error(ErrorKind::BadShape, "rank " + std::to_string(r) + " outside [1, " + std::to_string(n) + "]");
    }
    SplitMix64 rng(seed);
    CMatrix g = ginibre_matrix(n, r, rng);

    CMatrix rho(n, n);
    double tr = 0;
    for (size_t i = 0; i < n; i++) {
        double d = 0;
        for (size_t k = 0; k < r; k++) {
            d += std::norm(g(i, k));
        }
        rho(i, i) = d;
        tr += d;
        for (size_t j = i + 1; j < n; j++) {
            Complex s = 0;
            for (size_t k = 0; k < r; k++) {
                s += g(i, k) * std::conj(g(j, k));
            }
            rho(i, j) = s;
            rho(j, i) = std::conj(s);
        }
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            rho(i, j) /= tr;
        }
    }
    return validate_density(rho, shape);
}

CMatrix random_unitary(size_t dim, SplitMix64 &rng) {
    CMatrix q = ginibre_matrix(dim, dim, rng);
    for (size_t c = 0; c < dim; c++) {
        // Two passes keep the columns orthonormal to rounding level.
        for (int pass = 0; pass < 2; pass++) {
            for (size_t prev = 0; prev < c; prev++) {
                Complex dot = 0;
                for (size_t r = 0; r < dim; r++) {
                    dot += std::conj(q(r, prev)) * q(r, c);
                }
                for (size_t r = 0; r < dim; r++) {
                    q(r, c) -= dot * q(r, prev);
                }
            }
        }
        double nrm = 0;
        for (size_t r = 0; r < dim; r++) {
            nrm += std::norm(q(r, c));
        }
        nrm = std::sqrt(nrm);
        for (size_t r = 0; r < dim; r++) {
            q(r, c) /= nrm;
        }
    }
    return q;
}

double purity(const CMatrix &rho) {
    double s = 0;
    for (size_t i = 0; i < rho.rows(); i++) {
        for (size_t j = 0; j < rho.cols(); j++) {
            s += (rho(i, j) * rho(j, i)).real();
        }
    }
    return s;
}

}  // namespace qpurify
