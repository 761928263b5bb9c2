#ifndef FRCERT_RNG_HPP
#define FRCERT_RNG_HPP

#include <cstdint>

namespace frcert {

/// SplitMix64 stream. Chosen because it is tiny, portable and fully
/// specified, so seeds recorded in manifests mean the same thing anywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi] by rejection sampling.
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = next(); while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  /// Uniform nonzero integer in [-range, range].
  long uniform_nonzero(long range) {
    long v = uniform(1, range);
    return uniform(0, 1) ? v : -v;
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Independent per-item seed derived from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  return g.next();
}

}  // namespace frcert

#endif  // FRCERT_RNG_HPP
