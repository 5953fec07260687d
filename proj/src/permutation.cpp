#include "soficlab/permutation.hpp"

#include <stdexcept>
#include <vector>

namespace soficlab {

Permutation::Permutation(std::vector<std::uint32_t> images) : img_(std::move(images)) {
  std::vector<bool> hit(img_.size(), false);
  for (std::uint32_t v : img_) {
    if (v >= img_.size() || hit[v]) throw std::invalid_argument("not a permutation image array");
    hit[v] = true;
  }
}

Permutation Permutation::identity(std::uint32_t degree) {
  std::vector<std::uint32_t> img(degree);
  for (std::uint32_t i = 0; i < degree; ++i) img[i] = i;
  Permutation p;
  p.img_ = std::move(img);
  return p;
}

Permutation Permutation::compose(const Permutation& b) const {
  if (degree() != b.degree()) throw std::invalid_argument("compose: degree mismatch");
  Permutation out;
  out.img_.resize(img_.size());
  for (std::uint32_t x = 0; x < degree(); ++x) out.img_[x] = img_[b.img_[x]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.img_.resize(img_.size());
  for (std::uint32_t x = 0; x < degree(); ++x) out.img_[img_[x]] = x;
  return out;
}

Permutation Permutation::power(long long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ULL
                               : static_cast<unsigned long long>(e);
  Permutation acc = Permutation::identity(degree());
  while (k > 0) {
    if (k & 1ULL) acc = acc.compose(base);
    base = base.compose(base);
    k >>= 1ULL;
  }
  return acc;
}

double hamming_distance(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("hamming_distance: degree mismatch");
  if (a.degree() == 0) return 0.0;
  std::uint32_t mismatches = 0;
  for (std::uint32_t x = 0; x < a.degree(); ++x) {
    if (a(x) != b(x)) ++mismatches;
  }
  return static_cast<double>(mismatches) / static_cast<double>(a.degree());
}

}  // namespace soficlab
