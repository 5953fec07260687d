#pragma once
// Finite permutation models of groups: a level assigns to each generator a
// permutation of {0,...,d-1}; words are evaluated by composing generator
// images letter by letter on the canonical reduced form (inverse letters use
// the inverse permutation, the empty word the identity). Constructions:
// cyclic rotations for Z, block rotations for Z/k, seeded uniform
// permutations for free groups, and coordinatewise tensor powers.

#include <cstdint>
#include <utility>
#include <vector>

#include "soficlab/group.hpp"
#include "soficlab/permutation.hpp"

namespace soficlab {

struct SoficLevel {
  GroupDescriptor group;
  std::uint32_t degree = 0;
  std::vector<Permutation> gen_images;  // one per standard generator

  // Image of a canonical-form word: product of letter images, left to right.
  // Abelian exponents use permutation powers (repeated squaring).
  Permutation evaluate(const GroupWord& w) const;

  // Image of a single signed letter (+j -> generator j, -j -> its inverse).
  Permutation letter_image(long long letter) const;
};

// Z acting on Z/n by +1: an exact homomorphism, so every multiplicativity
// defect vanishes; freeness defect of distinct shifts s != s' (mod n) is 1.
SoficLevel folner_cyclic(std::uint32_t n);

// Z/k acting on n points: floor(n/k) disjoint k-cycles, remaining r = n mod k
// points fixed. The generator image has exact order k, so this is again a
// homomorphism; the fixed points dilute freeness (distance between distinct
// powers is (n - r)/n, not 1).
SoficLevel finite_block(int k, std::uint32_t n);

// Free group of the given rank: independent uniform permutations per
// generator, drawn from the seeded counter-based stream. Deterministic in
// (rank, d, seed).
SoficLevel random_free(int rank, std::uint32_t d, std::uint64_t seed);

// Coordinatewise action on d^k points: sigma^(k)(g)(x_1..x_k) applies
// sigma(g) in every coordinate. Degree d^k is checked against `cap`.
SoficLevel tensor_power(const SoficLevel& level, int k, std::size_t cap = kDefaultCapacity);

struct DefectReport {
  struct PairStat {
    GroupWord s, t;
    double value = 0.0;
  };
  std::vector<PairStat> multiplicativity;  // d(sigma(s)sigma(t), sigma(st))
  std::vector<PairStat> freeness;          // d(sigma(s), sigma(t)), s != t
  double max_multiplicativity = 0.0;
  double min_freeness = 1.0;
};

// Scores the level on the given word pairs: multiplicativity on every pair,
// freeness on the pairs with s != t.
DefectReport defect_report(const SoficLevel& level,
                           const std::vector<std::pair<GroupWord, GroupWord>>& pairs);

}  // namespace soficlab
