#include "soficlab/sofic.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "soficlab/rng.hpp"

namespace soficlab {

Permutation SoficLevel::letter_image(long long letter) const {
  const auto idx = static_cast<std::size_t>(std::llabs(letter)) - 1;
  if (letter == 0 || idx >= gen_images.size()) {
    throw std::invalid_argument("letter_image: letter out of range");
  }
  return letter > 0 ? gen_images[idx] : gen_images[idx].inverse();
}

Permutation SoficLevel::evaluate(const GroupWord& w) const {
  if (!(w.group == group)) throw std::invalid_argument("evaluate: word from wrong group");
  Permutation acc = Permutation::identity(degree);
  if (group.abelian()) {
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      if (w.letters[i] == 0) continue;
      acc = acc.compose(gen_images[i].power(w.letters[i]));
    }
    return acc;
  }
  for (long long letter : w.letters) acc = acc.compose(letter_image(letter));
  return acc;
}

SoficLevel folner_cyclic(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("folner_cyclic: degree must be positive");
  std::vector<std::uint32_t> img(n);
  for (std::uint32_t i = 0; i < n; ++i) img[i] = (i + 1) % n;
  return {GroupDescriptor::integers(), n, {Permutation(std::move(img))}};
}

SoficLevel finite_block(int k, std::uint32_t n) {
  if (k < 1) throw std::invalid_argument("finite_block: order must be >= 1");
  if (n == 0) throw std::invalid_argument("finite_block: degree must be positive");
  const auto ku = static_cast<std::uint32_t>(k);
  const std::uint32_t q = n / ku;
  std::vector<std::uint32_t> img(n);
  for (std::uint32_t i = 0; i < n; ++i) img[i] = i;
  for (std::uint32_t b = 0; b < q; ++b) {
    for (std::uint32_t j = 0; j < ku; ++j) {
      img[b * ku + j] = b * ku + (j + 1) % ku;
    }
  }
  return {GroupDescriptor::cyclic(k), n, {Permutation(std::move(img))}};
}

SoficLevel random_free(int rank, std::uint32_t d, std::uint64_t seed) {
  if (d == 0) throw std::invalid_argument("random_free: degree must be positive");
  const GroupDescriptor g = GroupDescriptor::free_group(rank);
  SplitMix64 root(seed);
  std::vector<Permutation> gens;
  gens.reserve(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) {
    SplitMix64 stream = root.split(static_cast<std::uint64_t>(i));
    gens.emplace_back(random_permutation_images(d, stream));
  }
  return {g, d, std::move(gens)};
}

SoficLevel tensor_power(const SoficLevel& level, int k, std::size_t cap) {
  if (k < 1) throw std::invalid_argument("tensor_power: exponent must be >= 1");
  unsigned long long total = 1;
  for (int i = 0; i < k; ++i) {
    total *= level.degree;
    if (total > cap) {
      throw CapacityError("tensor_power: degree " + std::to_string(level.degree) + "^" +
                          std::to_string(k) + " exceeds capacity of " + std::to_string(cap));
    }
  }
  const auto d = static_cast<std::uint32_t>(total);
  std::vector<Permutation> gens;
  gens.reserve(level.gen_images.size());
  for (const auto& base : level.gen_images) {
    std::vector<std::uint32_t> img(d);
    for (std::uint32_t x = 0; x < d; ++x) {
      // Decode base-`degree` digits, map each, re-encode.
      std::uint32_t rest = x, out = 0, scale = 1;
      for (int i = 0; i < k; ++i) {
        const std::uint32_t digit = rest % level.degree;
        rest /= level.degree;
        out += base(digit) * scale;
        scale *= level.degree;
      }
      img[x] = out;
    }
    gens.emplace_back(std::move(img));
  }
  return {level.group, d, std::move(gens)};
}

DefectReport defect_report(const SoficLevel& level,
                           const std::vector<std::pair<GroupWord, GroupWord>>& pairs) {
  DefectReport report;
  for (const auto& [s, t] : pairs) {
    const Permutation ps = level.evaluate(s);
    const Permutation pt = level.evaluate(t);
    const double mult = hamming_distance(ps.compose(pt), level.evaluate(multiply(s, t)));
    report.multiplicativity.push_back({s, t, mult});
    report.max_multiplicativity = std::max(report.max_multiplicativity, mult);
    if (!(s == t)) {
      const double free_dist = hamming_distance(ps, pt);
      report.freeness.push_back({s, t, free_dist});
      report.min_freeness = std::min(report.min_freeness, free_dist);
    }
  }
  return report;
}

}  // namespace soficlab
