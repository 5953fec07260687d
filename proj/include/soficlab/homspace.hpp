#pragma once
// Local spans of the group module, almost-equivariant linear maps into a
// finite level, and the explicit witness families that certify dimension
// lower bounds.
//
// The module l^p(group, C^n) is truncated to a finite stage: the span of the
// translated generators s * x_j, where x_j = (delta at identity) tensor e_j
// for j up to the multiplicity n (a generating sequence may declare extra
// zero generators beyond n, so the stage parameter m is not capped by n).
// Coordinates are (word, block): word from the m-fold product set F^m of a
// finite word list F containing the identity, block = generator index
// j <= min(m, n).
//
// A map T out of the span is scored by (operator-norm bracket, equivariance
// defect); it belongs to the Hom set at (C, delta) when the norm upper bound
// is at most C (plus 1e-9 slack) and the defect is below delta. Brackets
// that straddle C classify as Undetermined — counted separately, never
// silently passed.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "soficlab/group.hpp"
#include "soficlab/pnorm.hpp"
#include "soficlab/sofic.hpp"

namespace soficlab {

struct GeneratingSequence {
  GroupDescriptor group;
  int multiplicity = 1;     // nonzero generators x_1..x_multiplicity
  int declared_length = 1;  // listed length; x_j = 0 for j > multiplicity
};

struct LocalSpan {
  GroupDescriptor group;
  int multiplicity = 1;
  int generator_limit = 1;  // = min(m, multiplicity)
  int stage_m = 1;
  std::vector<GroupWord> words;  // product set F^m, breadth-first, words[0] = e
  std::unordered_map<std::string, int> index;

  int word_count() const { return static_cast<int>(words.size()); }
  int dim() const { return word_count() * generator_limit; }
  // Column of delta_w tensor e_j (j is 1-based).
  int column(int word_idx, int j) const { return (j - 1) * word_count() + word_idx; }
  int find(const GroupWord& w) const;
};

// Enumerates F^m (products of exactly m factors of F; F contains e, so all
// shorter products appear too) and assembles the span. m = 0 is rejected.
LocalSpan build_span(const GeneratingSequence& s, const std::vector<GroupWord>& f, int m,
                     std::size_t cap = kDefaultCapacity);

// A linear map from a LocalSpan into the level's model space, as a dense
// matrix over the span's coordinates. The codomain tag selects how group
// elements act on images: coordinates of l^p(d) under the permutation
// action, or flattened d x d matrices under conjugation / left
// multiplication by the permutation unitaries.
struct LinearMapMatrix {
  enum class Codomain { Vector, MatrixConjugate, MatrixMultiply };
  Eigen::MatrixXcd matrix;  // codomain dim x span dim
  double p = 2.0;           // shared domain/codomain exponent
  Codomain codomain = Codomain::Vector;
  Eigen::Index matrix_rows = 0;  // matrix codomains: image side length
};

struct DefectResult {
  NormBracket norm;
  double defect = 0.0;
};

// Norm bracket of T plus the maximal equivariance defect
//   || T(s_1...s_k x_j) - sigma(s_1)...sigma(s_k) T(x_j) ||
// over tuples from F^k, k <= m, and generator indices j. Every product
// s_1...s_k must land in the span (guaranteed when the span was built from
// the same F at stage >= m).
DefectResult hom_defect(const LinearMapMatrix& t, const LocalSpan& span,
                        const std::vector<GroupWord>& f, int m, const SoficLevel& level);

enum class HomStatus { Pass, Fail, Undetermined };
HomStatus classify_membership(const DefectResult& r, double c, double delta);

// Permutation images of every span word under the level, computed once.
std::vector<Permutation> evaluate_span_words(const SoficLevel& level, const LocalSpan& span);

// Coordinate witness T_{j,k}: sends delta_w tensor e_k to delta at
// sigma(w)(j) and the other blocks to zero. Its generator images are the
// standard basis-like vectors delta_j tensor e_k, so passing witnesses feed
// the orthonormal-family lower bound directly.
LinearMapMatrix witness_lp(const SoficLevel& level, const LocalSpan& span,
                           const std::vector<Permutation>& word_perms, std::uint32_t j, int k,
                           double p);

// All d * n coordinate witnesses (j over points, k over blocks); n must not
// exceed the span's generator limit.
std::vector<LinearMapMatrix> witness_family_lp(const SoficLevel& level, const LocalSpan& span,
                                               int n, double p);

// Schatten-space witnesses over the span words. Conjugate mode sends
// delta_s to the rank-one (sigma(s) xi)(sigma(s) eta)^*; multiply mode sends
// delta_s to U_{sigma(s)} A. xi, eta must be unit vectors (1e-8).
LinearMapMatrix witness_schatten_conjugate(const SoficLevel& level, const LocalSpan& span,
                                           const std::vector<Permutation>& word_perms,
                                           const Eigen::VectorXcd& xi, const Eigen::VectorXcd& eta,
                                           double p);
LinearMapMatrix witness_schatten_multiply(const SoficLevel& level, const LocalSpan& span,
                                          const std::vector<Permutation>& word_perms,
                                          const Eigen::MatrixXcd& a, double p);
std::vector<LinearMapMatrix> witness_family_schatten_conjugate(
    const SoficLevel& level, const LocalSpan& span,
    const std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>>& pairs, double p);
std::vector<LinearMapMatrix> witness_family_schatten_multiply(
    const SoficLevel& level, const LocalSpan& span, const std::vector<Eigen::MatrixXcd>& as,
    double p);

// Seeded unit-vector pairs for the default Schatten witnesses.
std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> seeded_unit_pairs(std::uint32_t d,
                                                                             int count,
                                                                             std::uint64_t seed);

// Sequence of generator images (T(x_1), ..., T(x_m)); entries beyond the
// span's generator limit are zero vectors (the padded generators).
std::vector<Eigen::VectorXcd> generator_images(const LinearMapMatrix& t, const LocalSpan& span,
                                               int m);

// Averaged map (1/|E|) sum_{s in E} sigma(s) o T o s^{-1}. Requires
// s^{-1} w to stay inside the span for every s in E and span word w; a
// contraction in every l^p, and a projection onto equivariant maps when E
// enumerates a finite group represented exactly.
LinearMapMatrix averaging_projection(const LinearMapMatrix& t, const std::vector<GroupWord>& e_set,
                                     const SoficLevel& level, const LocalSpan& span);

// Action of a permutation on a codomain element of the given kind.
Eigen::VectorXcd codomain_action(const Permutation& sigma, const Eigen::VectorXcd& image,
                                 LinearMapMatrix::Codomain kind, Eigen::Index matrix_rows);

// Norm bracket dispatcher: vector codomains use operator_pnorm, matrix
// codomains the Schatten map bracket.
NormBracket map_norm_bracket(const LinearMapMatrix& t);

}  // namespace soficlab
