#ifndef QLRA_RNG_HPP
#define QLRA_RNG_HPP

#include <cmath>
#include <cstdint>

namespace qlra {

// splitmix64 finalizer (Steele/Lea/Flood mixing constants, Vigna's variant).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based splittable generator. A stream is a 64-bit key; draw i of the
// stream is mix64(key + i*golden), i.e. the splitmix64 sequence seeded at the
// key. Draws are addressable by counter, so any sub-block of a random matrix
// can be regenerated without producing its predecessors, and chunked
// generation is bit-identical to monolithic generation.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix64(seed ^ kSalt)) {}

  // Derived child stream; children with distinct indices are decorrelated.
  CounterRng substream(std::uint64_t index) const {
    CounterRng child(0);
    child.key_ = mix64(key_ ^ mix64(index + kSalt));
    return child;
  }

  std::uint64_t u64_at(std::uint64_t counter) const {
    return mix64(key_ + kGolden * (counter + 1));
  }

  // Uniform on [0,1), 53-bit resolution.
  double uniform_at(std::uint64_t counter) const {
    return static_cast<double>(u64_at(counter) >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes counters 2c and 2c+1.
  double gaussian_at(std::uint64_t counter) const {
    const double u1 = uniform_at(2 * counter);
    const double u2 = uniform_at(2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * M_PI * u2);
  }

  std::uint64_t key() const { return key_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kSalt = 0xD1B54A32D192ED03ULL;
  std::uint64_t key_;
};

// Stateful convenience wrapper over a CounterRng stream.
class SequentialRng {
 public:
  explicit SequentialRng(CounterRng stream) : stream_(stream) {}
  explicit SequentialRng(std::uint64_t seed) : stream_(seed) {}

  std::uint64_t next_u64() { return stream_.u64_at(counter_++); }
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double next_gaussian() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  CounterRng stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace qlra

#endif
