#pragma once
// Finitely generated groups used by the laboratory: Z, Z^2, Z/k, and free
// groups F_n. Elements are kept in a canonical reduced form so equality is
// plain comparison: abelian groups store one exponent per generator (mod k
// for the cyclic case), free groups store a freely reduced letter string.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace soficlab {

// Thrown when a ball/product enumeration would exceed its element budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultCapacity = 2'000'000;

enum class GroupKind { Cyclic, Integers, Integers2, Free };

struct GroupDescriptor {
  GroupKind kind = GroupKind::Integers;
  int param = 0;  // modulus k (Cyclic) or rank n (Free); unused otherwise

  static GroupDescriptor cyclic(int k);
  static GroupDescriptor integers();
  static GroupDescriptor integers_squared();
  static GroupDescriptor free_group(int rank);

  int generator_count() const;
  bool abelian() const { return kind != GroupKind::Free; }
  bool operator==(const GroupDescriptor& o) const { return kind == o.kind && param == o.param; }
  std::string name() const;
};

// A group element in canonical form.
//  - abelian kinds: `letters` is the exponent tuple (size = generator_count),
//    entries of the cyclic case lie in [0, k)
//  - free kind: `letters` are nonzero values in {±1, ..., ±rank}, freely
//    reduced (no adjacent x, -x)
struct GroupWord {
  GroupDescriptor group;
  std::vector<long long> letters;

  bool operator==(const GroupWord& o) const { return group == o.group && letters == o.letters; }
};

GroupWord identity_word(const GroupDescriptor& g);
bool is_identity(const GroupWord& w);

// Canonicalizes a raw letter/exponent string.
//  - abelian: `raw` is an exponent tuple; cyclic entries are reduced mod k
//  - free: `raw` is a letter string; adjacent inverse pairs are cancelled
GroupWord reduce(const GroupDescriptor& g, std::vector<long long> raw);

GroupWord multiply(const GroupWord& a, const GroupWord& b);
GroupWord inverse(const GroupWord& a);

// Word length in the standard generators (abelian: sum of |exponent|, with
// cyclic exponents measured as min(e, k-e); free: letter count).
int word_length(const GroupWord& w);

// Stable text form, usable as a hash key ("a1^-2*a2^3", "e", "ab^-1a").
std::string word_key(const GroupWord& w);

// The standard generating set a_1..a_n (no inverses, no identity).
std::vector<GroupWord> standard_generators(const GroupDescriptor& g);

// Closed ball of the given radius in the word metric of `gens` (their
// inverses are included automatically). Deterministic breadth-first order
// starting at the identity. Throws CapacityError beyond `cap` elements.
std::vector<GroupWord> ball(const GroupDescriptor& g, const std::vector<GroupWord>& gens,
                            int radius, std::size_t cap = kDefaultCapacity);

// All products of exactly `k` factors drawn from `factors` (with repetition),
// reduced; used for multiplicativity sweeps.
std::vector<std::vector<const GroupWord*>> factor_tuples(const std::vector<GroupWord>& factors, int k);

}  // namespace soficlab
