#include "soficlab/homspace.hpp"

#include <cmath>
#include <stdexcept>

#include "soficlab/rng.hpp"

namespace soficlab {

int LocalSpan::find(const GroupWord& w) const {
  const auto it = index.find(word_key(w));
  return it == index.end() ? -1 : it->second;
}

LocalSpan build_span(const GeneratingSequence& s, const std::vector<GroupWord>& f, int m,
                     std::size_t cap) {
  if (m < 1) throw std::invalid_argument("build_span: stage m must be >= 1");
  if (m > s.declared_length) {
    throw std::invalid_argument("build_span: stage m exceeds the generating sequence length");
  }
  if (s.multiplicity < 1 || s.declared_length < s.multiplicity) {
    throw std::invalid_argument("build_span: malformed generating sequence");
  }
  bool has_identity = false;
  for (const auto& w : f) {
    if (!(w.group == s.group)) throw std::invalid_argument("build_span: word from wrong group");
    if (is_identity(w)) has_identity = true;
  }
  if (!has_identity) throw std::invalid_argument("build_span: F must contain the identity");

  LocalSpan span;
  span.group = s.group;
  span.multiplicity = s.multiplicity;
  span.generator_limit = std::min(m, s.multiplicity);
  span.stage_m = m;
  span.words.push_back(identity_word(s.group));
  span.index.emplace(word_key(span.words.front()), 0);
  std::size_t frontier_begin = 0;
  for (int round = 0; round < m; ++round) {
    const std::size_t frontier_end = span.words.size();
    // e in F keeps every prefix in the set, so scanning the full prefix set
    // (not just the frontier) is redundant; the frontier suffices.
    for (std::size_t i = 0; i < frontier_end; ++i) {
      if (round > 0 && i < frontier_begin) continue;
      for (const auto& step : f) {
        GroupWord next = multiply(span.words[i], step);
        std::string key = word_key(next);
        if (span.index.contains(key)) continue;
        if (span.words.size() + 1 > cap) {
          throw CapacityError("build_span: span words exceed capacity " + std::to_string(cap));
        }
        span.index.emplace(std::move(key), static_cast<int>(span.words.size()));
        span.words.push_back(std::move(next));
      }
    }
    frontier_begin = frontier_end;
  }
  return span;
}

std::vector<Permutation> evaluate_span_words(const SoficLevel& level, const LocalSpan& span) {
  std::vector<Permutation> perms;
  perms.reserve(span.words.size());
  for (const auto& w : span.words) perms.push_back(level.evaluate(w));
  return perms;
}

Eigen::VectorXcd codomain_action(const Permutation& sigma, const Eigen::VectorXcd& image,
                                 LinearMapMatrix::Codomain kind, Eigen::Index matrix_rows) {
  if (kind == LinearMapMatrix::Codomain::Vector) return permutation_action(sigma, image);
  const Eigen::Index rows = matrix_rows;
  if (rows <= 0 || image.size() % rows != 0) {
    throw std::invalid_argument("codomain_action: bad matrix shape");
  }
  const Eigen::Index cols = image.size() / rows;
  Eigen::VectorXcd out(image.size());
  for (Eigen::Index b = 0; b < cols; ++b) {
    const Eigen::Index tb =
        kind == LinearMapMatrix::Codomain::MatrixConjugate
            ? static_cast<Eigen::Index>(sigma(static_cast<std::uint32_t>(b)))
            : b;
    for (Eigen::Index a = 0; a < rows; ++a) {
      const auto ta = static_cast<Eigen::Index>(sigma(static_cast<std::uint32_t>(a)));
      out[ta + tb * rows] = image[a + b * rows];
    }
  }
  return out;
}

NormBracket map_norm_bracket(const LinearMapMatrix& t) {
  if (t.codomain == LinearMapMatrix::Codomain::Vector) {
    return operator_pnorm(t.matrix, t.p, t.p);
  }
  std::vector<Eigen::MatrixXcd> columns;
  columns.reserve(static_cast<std::size_t>(t.matrix.cols()));
  const Eigen::Index rows = t.matrix_rows;
  const Eigen::Index cols = t.matrix.rows() / rows;
  for (Eigen::Index j = 0; j < t.matrix.cols(); ++j) {
    columns.push_back(Eigen::Map<const Eigen::MatrixXcd>(t.matrix.col(j).data(), rows, cols));
  }
  return schatten_map_norm_bracket(columns, t.p);
}

namespace {

double image_norm(const Eigen::VectorXcd& v, const LinearMapMatrix& t) {
  if (t.codomain == LinearMapMatrix::Codomain::Vector) return lp_norm(v, t.p);
  const Eigen::Index rows = t.matrix_rows;
  return schatten_norm(Eigen::Map<const Eigen::MatrixXcd>(v.data(), rows, v.size() / rows), t.p);
}

}  // namespace

DefectResult hom_defect(const LinearMapMatrix& t, const LocalSpan& span,
                        const std::vector<GroupWord>& f, int m, const SoficLevel& level) {
  if (t.matrix.cols() != span.dim()) {
    throw std::invalid_argument("hom_defect: map does not match the span dimensions");
  }
  if (m > span.stage_m) {
    throw std::invalid_argument("hom_defect: defect stage exceeds the span stage");
  }
  DefectResult result;
  result.norm = map_norm_bracket(t);

  std::vector<Permutation> f_images;
  f_images.reserve(f.size());
  for (const auto& step : f) f_images.push_back(level.evaluate(step));

  // Iterative DFS over tuples (s_1, ..., s_k), k <= m: node = (word product,
  // permutation product); children append one more factor of F on the right.
  struct Node {
    GroupWord word;
    Permutation sigma;
    int depth;
  };
  std::vector<Node> stack;
  stack.push_back({identity_word(span.group), Permutation::identity(level.degree), 0});
  double worst = 0.0;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (node.depth >= m) continue;
    for (std::size_t fi = 0; fi < f.size(); ++fi) {
      const auto& step = f[fi];
      Node child{multiply(node.word, step), node.sigma.compose(f_images[fi]), node.depth + 1};
      const int idx = span.find(child.word);
      if (idx < 0) {
        throw std::invalid_argument("hom_defect: product word escapes the span");
      }
      for (int j = 1; j <= span.generator_limit; ++j) {
        const Eigen::VectorXcd lhs = t.matrix.col(span.column(idx, j));
        const Eigen::VectorXcd rhs =
            codomain_action(child.sigma, t.matrix.col(span.column(0, j)), t.codomain, t.matrix_rows);
        worst = std::max(worst, image_norm(lhs - rhs, t));
      }
      stack.push_back(std::move(child));
    }
  }
  result.defect = worst;
  return result;
}

HomStatus classify_membership(const DefectResult& r, double c, double delta) {
  const double slack = c + 1e-9;
  if (r.defect >= delta) return HomStatus::Fail;
  if (r.norm.upper <= slack) return HomStatus::Pass;
  if (r.norm.lower > slack) return HomStatus::Fail;
  return HomStatus::Undetermined;
}

LinearMapMatrix witness_lp(const SoficLevel& level, const LocalSpan& span,
                           const std::vector<Permutation>& word_perms, std::uint32_t j, int k,
                           double p) {
  if (k < 1 || k > span.generator_limit) {
    throw std::invalid_argument("witness_lp: block index out of range");
  }
  if (j >= level.degree) throw std::invalid_argument("witness_lp: point index out of range");
  LinearMapMatrix t;
  t.p = p;
  t.codomain = LinearMapMatrix::Codomain::Vector;
  t.matrix = Eigen::MatrixXcd::Zero(level.degree, span.dim());
  for (int i = 0; i < span.word_count(); ++i) {
    t.matrix(word_perms[static_cast<std::size_t>(i)](j), span.column(i, k)) = 1.0;
  }
  return t;
}

std::vector<LinearMapMatrix> witness_family_lp(const SoficLevel& level, const LocalSpan& span,
                                               int n, double p) {
  if (n < 1 || n > span.generator_limit) {
    throw std::invalid_argument("witness_family_lp: multiplicity exceeds the span generators");
  }
  const std::vector<Permutation> perms = evaluate_span_words(level, span);
  std::vector<LinearMapMatrix> family;
  family.reserve(static_cast<std::size_t>(level.degree) * static_cast<std::size_t>(n));
  for (std::uint32_t j = 0; j < level.degree; ++j) {
    for (int k = 1; k <= n; ++k) family.push_back(witness_lp(level, span, perms, j, k, p));
  }
  return family;
}

namespace {
void check_unit(const Eigen::VectorXcd& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument(std::string("witness_schatten: ") + name +
                                " must be a unit vector");
  }
}
}  // namespace

LinearMapMatrix witness_schatten_conjugate(const SoficLevel& level, const LocalSpan& span,
                                           const std::vector<Permutation>& word_perms,
                                           const Eigen::VectorXcd& xi, const Eigen::VectorXcd& eta,
                                           double p) {
  check_unit(xi, "xi");
  check_unit(eta, "eta");
  const auto d = static_cast<Eigen::Index>(level.degree);
  if (xi.size() != d || eta.size() != d) {
    throw std::invalid_argument("witness_schatten: vector dimension mismatch");
  }
  LinearMapMatrix t;
  t.p = p;
  t.codomain = LinearMapMatrix::Codomain::MatrixConjugate;
  t.matrix_rows = d;
  t.matrix = Eigen::MatrixXcd::Zero(d * d, span.dim());
  for (int i = 0; i < span.word_count(); ++i) {
    const auto& sigma = word_perms[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd sx = permutation_action(sigma, xi);
    const Eigen::VectorXcd sy = permutation_action(sigma, eta);
    const Eigen::MatrixXcd rank_one = sx * sy.adjoint();
    for (int j = 1; j <= span.generator_limit; ++j) {
      t.matrix.col(span.column(i, j)) = flatten(rank_one);
    }
  }
  return t;
}

LinearMapMatrix witness_schatten_multiply(const SoficLevel& level, const LocalSpan& span,
                                          const std::vector<Permutation>& word_perms,
                                          const Eigen::MatrixXcd& a, double p) {
  const auto d = static_cast<Eigen::Index>(level.degree);
  if (a.rows() != d || a.cols() != d) {
    throw std::invalid_argument("witness_schatten: right factor dimension mismatch");
  }
  LinearMapMatrix t;
  t.p = p;
  t.codomain = LinearMapMatrix::Codomain::MatrixMultiply;
  t.matrix_rows = d;
  t.matrix = Eigen::MatrixXcd::Zero(d * d, span.dim());
  for (int i = 0; i < span.word_count(); ++i) {
    const Eigen::MatrixXcd image =
        permutation_matrix(word_perms[static_cast<std::size_t>(i)]) * a;
    for (int j = 1; j <= span.generator_limit; ++j) {
      t.matrix.col(span.column(i, j)) = flatten(image);
    }
  }
  return t;
}

std::vector<LinearMapMatrix> witness_family_schatten_conjugate(
    const SoficLevel& level, const LocalSpan& span,
    const std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>>& pairs, double p) {
  const std::vector<Permutation> perms = evaluate_span_words(level, span);
  std::vector<LinearMapMatrix> family;
  family.reserve(pairs.size());
  for (const auto& [xi, eta] : pairs) {
    family.push_back(witness_schatten_conjugate(level, span, perms, xi, eta, p));
  }
  return family;
}

std::vector<LinearMapMatrix> witness_family_schatten_multiply(const SoficLevel& level,
                                                              const LocalSpan& span,
                                                              const std::vector<Eigen::MatrixXcd>& as,
                                                              double p) {
  const std::vector<Permutation> perms = evaluate_span_words(level, span);
  std::vector<LinearMapMatrix> family;
  family.reserve(as.size());
  for (const auto& a : as) family.push_back(witness_schatten_multiply(level, span, perms, a, p));
  return family;
}

std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> seeded_unit_pairs(std::uint32_t d,
                                                                             int count,
                                                                             std::uint64_t seed) {
  SplitMix64 root(seed);
  std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    SplitMix64 gen = root.split(static_cast<std::uint64_t>(i));
    auto draw = [&]() {
      Eigen::VectorXcd v(d);
      for (std::uint32_t c = 0; c < d; ++c) {
        double x = 0.0, y = 0.0;
        do {
          x = 2.0 * gen.next_double() - 1.0;
          y = 2.0 * gen.next_double() - 1.0;
        } while (x * x + y * y > 1.0);
        v[c] = std::complex<double>(x, y);
      }
      const double n = v.norm();
      return n == 0.0 ? Eigen::VectorXcd::Unit(d, 0).eval() : (v / n).eval();
    };
    pairs.emplace_back(draw(), draw());
  }
  return pairs;
}

std::vector<Eigen::VectorXcd> generator_images(const LinearMapMatrix& t, const LocalSpan& span,
                                               int m) {
  if (t.matrix.cols() != span.dim()) {
    throw std::invalid_argument("generator_images: map does not match the span");
  }
  std::vector<Eigen::VectorXcd> seq;
  seq.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    if (j <= span.generator_limit) {
      seq.emplace_back(t.matrix.col(span.column(0, j)));
    } else {
      seq.emplace_back(Eigen::VectorXcd::Zero(t.matrix.rows()));
    }
  }
  return seq;
}

LinearMapMatrix averaging_projection(const LinearMapMatrix& t, const std::vector<GroupWord>& e_set,
                                     const SoficLevel& level, const LocalSpan& span) {
  if (t.matrix.cols() != span.dim()) {
    throw std::invalid_argument("averaging_projection: map does not match the span");
  }
  if (e_set.empty()) throw std::invalid_argument("averaging_projection: E must be nonempty");
  // Precompute source columns; fail fast if any s^{-1} w escapes the span.
  std::vector<std::vector<int>> source(e_set.size(), std::vector<int>(span.words.size()));
  for (std::size_t si = 0; si < e_set.size(); ++si) {
    const GroupWord sinv = inverse(e_set[si]);
    for (std::size_t wi = 0; wi < span.words.size(); ++wi) {
      const int idx = span.find(multiply(sinv, span.words[wi]));
      if (idx < 0) {
        throw std::invalid_argument(
            "averaging_projection: domain too small (s^{-1} w escapes the span)");
      }
      source[si][wi] = idx;
    }
  }
  LinearMapMatrix out = t;
  out.matrix.setZero();
  const double scale = 1.0 / static_cast<double>(e_set.size());
  for (std::size_t si = 0; si < e_set.size(); ++si) {
    const Permutation sigma = level.evaluate(e_set[si]);
    for (std::size_t wi = 0; wi < span.words.size(); ++wi) {
      for (int j = 1; j <= span.generator_limit; ++j) {
        const Eigen::VectorXcd moved = codomain_action(
            sigma, t.matrix.col(span.column(source[si][wi], j)), t.codomain, t.matrix_rows);
        out.matrix.col(span.column(static_cast<int>(wi), j)) += scale * moved;
      }
    }
  }
  return out;
}

}  // namespace soficlab
