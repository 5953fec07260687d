#include "soficlab/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_set>

namespace soficlab {

GroupDescriptor GroupDescriptor::cyclic(int k) {
  if (k < 1) throw std::invalid_argument("cyclic group needs modulus >= 1");
  return {GroupKind::Cyclic, k};
}
GroupDescriptor GroupDescriptor::integers() { return {GroupKind::Integers, 0}; }
GroupDescriptor GroupDescriptor::integers_squared() { return {GroupKind::Integers2, 0}; }
GroupDescriptor GroupDescriptor::free_group(int rank) {
  if (rank < 1) throw std::invalid_argument("free group needs rank >= 1");
  return {GroupKind::Free, rank};
}

int GroupDescriptor::generator_count() const {
  switch (kind) {
    case GroupKind::Cyclic:
    case GroupKind::Integers:
      return 1;
    case GroupKind::Integers2:
      return 2;
    case GroupKind::Free:
      return param;
  }
  return 0;
}

std::string GroupDescriptor::name() const {
  switch (kind) {
    case GroupKind::Cyclic:
      return "Z/" + std::to_string(param);
    case GroupKind::Integers:
      return "Z";
    case GroupKind::Integers2:
      return "Z^2";
    case GroupKind::Free:
      return "F" + std::to_string(param);
  }
  return "?";
}

namespace {
long long mod_nonneg(long long v, long long k) {
  long long r = v % k;
  return r < 0 ? r + k : r;
}
}  // namespace

GroupWord identity_word(const GroupDescriptor& g) {
  GroupWord w{g, {}};
  if (g.abelian()) w.letters.assign(static_cast<std::size_t>(g.generator_count()), 0);
  return w;
}

bool is_identity(const GroupWord& w) {
  if (w.group.abelian()) {
    return std::all_of(w.letters.begin(), w.letters.end(), [](long long v) { return v == 0; });
  }
  return w.letters.empty();
}

GroupWord reduce(const GroupDescriptor& g, std::vector<long long> raw) {
  if (g.abelian()) {
    const auto n = static_cast<std::size_t>(g.generator_count());
    if (raw.size() != n) throw std::invalid_argument("exponent tuple has wrong arity");
    if (g.kind == GroupKind::Cyclic) {
      for (auto& v : raw) v = mod_nonneg(v, g.param);
    }
    return {g, std::move(raw)};
  }
  std::vector<long long> out;
  out.reserve(raw.size());
  for (long long letter : raw) {
    if (letter == 0 || std::llabs(letter) > g.param) {
      throw std::invalid_argument("free-group letter out of range");
    }
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return {g, std::move(out)};
}

GroupWord multiply(const GroupWord& a, const GroupWord& b) {
  if (!(a.group == b.group)) throw std::invalid_argument("multiply: mismatched groups");
  if (a.group.abelian()) {
    std::vector<long long> sum(a.letters.size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = a.letters[i] + b.letters[i];
    return reduce(a.group, std::move(sum));
  }
  std::vector<long long> cat = a.letters;
  cat.insert(cat.end(), b.letters.begin(), b.letters.end());
  return reduce(a.group, std::move(cat));
}

GroupWord inverse(const GroupWord& a) {
  if (a.group.abelian()) {
    std::vector<long long> neg(a.letters.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -a.letters[i];
    return reduce(a.group, std::move(neg));
  }
  std::vector<long long> rev(a.letters.rbegin(), a.letters.rend());
  for (auto& v : rev) v = -v;
  return {a.group, std::move(rev)};
}

int word_length(const GroupWord& w) {
  if (!w.group.abelian()) return static_cast<int>(w.letters.size());
  long long len = 0;
  for (long long e : w.letters) {
    if (w.group.kind == GroupKind::Cyclic) {
      len += std::min(e, w.group.param - e);
    } else {
      len += std::llabs(e);
    }
  }
  return static_cast<int>(len);
}

std::string word_key(const GroupWord& w) {
  if (is_identity(w)) return "e";
  std::string key;
  if (w.group.abelian()) {
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      if (w.letters[i] == 0) continue;
      key += "a" + std::to_string(i + 1) + "^" + std::to_string(w.letters[i]) + "*";
    }
    if (!key.empty()) key.pop_back();
    return key;
  }
  for (long long letter : w.letters) {
    key += (letter > 0 ? "+" : "-");
    key += std::to_string(std::llabs(letter));
  }
  return key;
}

std::vector<GroupWord> standard_generators(const GroupDescriptor& g) {
  std::vector<GroupWord> gens;
  const int n = g.generator_count();
  for (int i = 1; i <= n; ++i) {
    if (g.abelian()) {
      std::vector<long long> exps(static_cast<std::size_t>(n), 0);
      exps[static_cast<std::size_t>(i - 1)] = 1;
      gens.push_back(reduce(g, std::move(exps)));
    } else {
      gens.push_back(reduce(g, {i}));
    }
  }
  return gens;
}

std::vector<GroupWord> ball(const GroupDescriptor& g, const std::vector<GroupWord>& gens,
                            int radius, std::size_t cap) {
  if (radius < 0) throw std::invalid_argument("ball: radius must be nonnegative");
  std::vector<GroupWord> steps;
  for (const auto& s : gens) {
    if (!(s.group == g)) throw std::invalid_argument("ball: generator from wrong group");
    steps.push_back(s);
    GroupWord si = inverse(s);
    if (!(si == s)) steps.push_back(std::move(si));
  }

  std::vector<GroupWord> elements{identity_word(g)};
  std::unordered_set<std::string> seen{word_key(elements.front())};
  std::size_t frontier_begin = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t frontier_end = elements.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto& s : steps) {
        GroupWord next = multiply(elements[i], s);
        std::string key = word_key(next);
        if (seen.insert(std::move(key)).second) {
          if (elements.size() + 1 > cap) {
            throw CapacityError("ball enumeration exceeds capacity of " + std::to_string(cap) +
                                " elements");
          }
          elements.push_back(std::move(next));
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return elements;
}

std::vector<std::vector<const GroupWord*>> factor_tuples(const std::vector<GroupWord>& factors,
                                                         int k) {
  std::vector<std::vector<const GroupWord*>> out;
  if (k <= 0) return out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    std::vector<const GroupWord*> tuple;
    tuple.reserve(idx.size());
    for (std::size_t i : idx) tuple.push_back(&factors[i]);
    out.push_back(std::move(tuple));
    int pos = k - 1;
    while (pos >= 0) {
      if (++idx[static_cast<std::size_t>(pos)] < factors.size()) break;
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

}  // namespace soficlab
