#pragma once

#include <cstdint>
#include <random>

#include "gainmat/rational.hpp"
#include "gainmat/scalar.hpp"

namespace gainmat {

// Height of Schwartz-Zippel sample coefficients; 2^16 keeps the failure
// probability of the genericity surrogate negligible at our matrix sizes.
inline constexpr std::uint64_t kDefaultHeight = std::uint64_t(1) << 16;

// Deterministic random stream: identical (seed, tags, call index) always
// yields identical draws, which makes reports replayable byte for byte.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Derived stream keyed by (seed, tag, a, b); used to give each edge,
    // vertex or coordinate its own independent substream.
    Rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t a = 0, std::uint64_t b = 0) {
        std::seed_seq seq{static_cast<unsigned>(seed), static_cast<unsigned>(seed >> 32),
                          static_cast<unsigned>(tag),  static_cast<unsigned>(tag >> 32),
                          static_cast<unsigned>(a),    static_cast<unsigned>(a >> 32),
                          static_cast<unsigned>(b),    static_cast<unsigned>(b >> 32)};
        eng_.seed(seq);
    }

    std::uint64_t next() { return eng_(); }

    // Uniform in [1, height]; bias from the modulo is irrelevant here and
    // determinism across runs is what matters.
    std::uint64_t uniform_positive(std::uint64_t height) { return 1 + eng_() % height; }

    Rational random_rational(std::uint64_t height = kDefaultHeight) {
        const std::uint64_t n = uniform_positive(height);
        const std::uint64_t d = uniform_positive(height);
        return Rational(BigInt(n), BigInt(d));
    }

    // Positive rational with numerator and denominator uniform in [1, height].
    Scalar random_scalar(std::uint64_t height = kDefaultHeight) { return Scalar(random_rational(height)); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace gainmat
