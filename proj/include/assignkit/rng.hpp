#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "assignkit/rational.hpp"

namespace assignkit {

/// Seeded random source with platform-independent draws. mt19937_64 output
/// is pinned by the standard; the bounded draws below avoid
/// std::uniform_int_distribution on purpose because its mapping is
/// implementation-defined and would break byte-exact replay.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform draw from [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("empty uniform_int range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - lo + 1;
    return lo + static_cast<int>(next() % span);
  }

  /// True with exact probability p (a rational in [0, 1]).
  bool bernoulli(const Rational& p) {
    if (p.is_negative() || Rational(1) < p) throw std::invalid_argument("probability outside [0, 1]");
    const unsigned __int128 threshold =
        (static_cast<unsigned __int128>(p.num()) << 64) / static_cast<unsigned __int128>(p.den());
    return static_cast<unsigned __int128>(next()) < threshold;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace assignkit
