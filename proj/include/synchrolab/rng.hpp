#pragma once

#include <cstdint>
#include <random>

namespace synchrolab {

/// SplitMix64 finalizer. Used to decorrelate nearby seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of one random stream. Stream `i` of master `m` is
/// `mix64(mix64(m) ^ mix64(i + 1))`, so draws depend only on (m, i) and
/// never on the order in which streams are consumed.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  constexpr std::uint64_t value() const {
    return mix64(mix64(master) ^ mix64(stream + 1));
  }
  /// A child stream space rooted at this stream.
  constexpr Seed child(std::uint64_t index) const { return Seed{value(), index}; }
};

/// mt19937_64 wrapped with portable bounded-integer and unit-interval
/// draws, so the same seed gives the same values on every standard library.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value()) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, bound); bound must be positive. Lemire's multiply-shift
  /// with rejection, exact for every bound.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace synchrolab
