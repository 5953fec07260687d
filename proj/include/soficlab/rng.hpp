#pragma once
// Deterministic counter-based random source (SplitMix64).
//
// The k-th output is a pure function of (seed, k): the state advances by a
// fixed odd increment and each output is an avalanche mix of the state.
// Child streams are derived by mixing the stream id into the seed, so
// experiments can hand out independent generators without sharing state.
// Floating-point draws use only arithmetic and comparisons (no libm
// transcendentals), keeping every downstream number bit-identical across
// platforms and compilers.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace soficlab {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("SplitMix64::below: n must be positive");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  // Independent child generator. Mixing the id through one full step keeps
  // distinct ids from producing overlapping streams.
  SplitMix64 split(std::uint64_t stream_id) const {
    SplitMix64 mixer(state_ ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)));
    return SplitMix64(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

// In-place Fisher–Yates shuffle producing a uniform permutation of 0..d-1.
inline std::vector<std::uint32_t> random_permutation_images(std::uint32_t d, SplitMix64& gen) {
  std::vector<std::uint32_t> img(d);
  for (std::uint32_t i = 0; i < d; ++i) img[i] = i;
  for (std::uint32_t i = d; i > 1; --i) {
    const auto j = static_cast<std::uint32_t>(gen.below(i));
    std::swap(img[i - 1], img[j]);
  }
  return img;
}

}  // namespace soficlab
