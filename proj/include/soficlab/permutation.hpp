#pragma once
// Permutations of {0, ..., d-1} stored as image arrays, plus the normalized
// Hamming distance used to score approximation quality.

#include <cstdint>
#include <vector>

namespace soficlab {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::uint32_t degree);

  std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }
  std::uint32_t operator()(std::uint32_t point) const { return img_[point]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  // Function composition: (a.compose(b))(x) = a(b(x)).
  Permutation compose(const Permutation& b) const;
  Permutation inverse() const;
  // Signed power by repeated squaring.
  Permutation power(long long e) const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }

 private:
  std::vector<std::uint32_t> img_;
};

// Fraction of points where the two permutations disagree, in [0, 1].
double hamming_distance(const Permutation& a, const Permutation& b);

}  // namespace soficlab
