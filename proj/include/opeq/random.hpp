#pragma once

// Seeded random source shared by the instance generator, the module-layer
// checks and the tests. The bit-level procedure is documented in docs/prng.md;
// ports must follow it exactly to reproduce generated instances.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

#include "opeq/kernel.hpp"

namespace opeq {

/// SplitMix64, used only to expand a 64-bit seed into xoshiro state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256** 1.0.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next(); }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// One Box-Muller pair: two independent standard normals.
    std::pair<double, double> normal_pair() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(theta), r * std::sin(theta)};
    }

    /// Standard normal real and imaginary parts, from one Box-Muller pair.
    Complex complex_normal() {
        const auto [re, im] = normal_pair();
        return {re, im};
    }

    /// Log-uniform on [lo, hi].
    double log_uniform(double lo, double hi) {
        const double a = std::log10(lo);
        const double b = std::log10(hi);
        return std::pow(10.0, a + (b - a) * uniform());
    }

    /// Uniform integer in [lo, hi].
    std::size_t integer(std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(uniform() * static_cast<double>(hi - lo + 1));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

/// Complex Gaussian matrix, entries drawn in row-major order.
inline ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Xoshiro256& rng) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
    return m;
}

/// n x r matrix with orthonormal columns (Householder Q of a Gaussian draw).
inline ComplexMatrix random_isometry(Eigen::Index n, Eigen::Index r, Xoshiro256& rng) {
    if (r > n) throw InvalidArgument("random_isometry: more columns than rows");
    if (r == 0) return zeros(n, 0);
    const ComplexMatrix g = gaussian_matrix(n, r, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    return qr.householderQ() * ComplexMatrix::Identity(n, r);
}

/// U * diag(sigma) * V^* with exactly `rank` singular values drawn
/// log-uniformly from [1e-2, 1].
inline ComplexMatrix rank_targeted(Eigen::Index rows, Eigen::Index cols, Eigen::Index rank, Xoshiro256& rng) {
    if (rank < 0 || rank > std::min(rows, cols)) {
        throw InvalidArgument("rank_targeted: rank " + std::to_string(rank) + " exceeds min(" +
                              std::to_string(rows) + ", " + std::to_string(cols) + ")");
    }
    if (rank == 0) return zeros(rows, cols);
    const ComplexMatrix u = random_isometry(rows, rank, rng);
    const ComplexMatrix v = random_isometry(cols, rank, rng);
    RealVector sigma(rank);
    for (Eigen::Index i = 0; i < rank; ++i) sigma(i) = rng.log_uniform(1e-2, 1.0);
    return u * sigma.asDiagonal() * v.adjoint();
}

}  // namespace opeq
