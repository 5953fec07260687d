#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "soficlab/epsdim.hpp"
#include "soficlab/homspace.hpp"
#include "soficlab/pnorm.hpp"

using namespace soficlab;

namespace {

LocalSpan f2_span(int multiplicity, int m) {
  const auto f2 = GroupDescriptor::free_group(2);
  const GeneratingSequence seq{f2, multiplicity, std::max(multiplicity, m)};
  return build_span(seq, ball(f2, standard_generators(f2), 1), m);
}

}  // namespace

TEST_CASE("local spans enumerate the stage-m product set") {
  const LocalSpan s1 = f2_span(1, 1);
  CHECK(s1.word_count() == 5);  // F = ball of radius 1 in F_2
  CHECK(s1.generator_limit == 1);
  CHECK(is_identity(s1.words[0]));
  const LocalSpan s2 = f2_span(1, 2);
  CHECK(s2.word_count() == 17);  // F^2 = ball of radius 2 (F contains e)
  CHECK(s2.dim() == 17);

  // Column layout is a bijection onto [0, dim).
  const LocalSpan wide = f2_span(3, 2);
  CHECK(wide.generator_limit == 2);  // min(m, multiplicity)
  std::set<int> cols;
  for (int j = 1; j <= wide.generator_limit; ++j)
    for (int w = 0; w < wide.word_count(); ++w) cols.insert(wide.column(w, j));
  CHECK(cols.size() == static_cast<std::size_t>(wide.dim()));
  CHECK(*cols.begin() == 0);
  CHECK(*cols.rbegin() == wide.dim() - 1);

  // find() inverts the word listing.
  const auto f2 = GroupDescriptor::free_group(2);
  CHECK(wide.find(reduce(f2, {1, 2})) >= 0);
  CHECK(wide.find(reduce(f2, {1, 1, 1})) == -1);  // outside stage 2

  // Stage zero and an F without the identity are rejected.
  const GeneratingSequence seq{f2, 1, 1};
  CHECK_THROWS_AS(build_span(seq, ball(f2, standard_generators(f2), 1), 0), std::invalid_argument);
  CHECK_THROWS_AS(build_span(seq, standard_generators(f2), 1), std::invalid_argument);
}

TEST_CASE("declared zero padding keeps the stage independent of multiplicity") {
  // One nonzero generator declared inside a length-3 sequence: stage 3 is
  // allowed and the padded generator images are zero.
  const auto f2 = GroupDescriptor::free_group(2);
  const GeneratingSequence seq{f2, 1, 3};
  const LocalSpan span = build_span(seq, ball(f2, standard_generators(f2), 1), 3);
  CHECK(span.generator_limit == 1);
  CHECK(span.word_count() == 53);  // ball of radius 3 in F_2

  const SoficLevel level = random_free(2, 19, 7);
  const auto perms = evaluate_span_words(level, span);
  const LinearMapMatrix t = witness_lp(level, span, perms, 0, 1, 2.0);
  const auto images = generator_images(t, span, 3);
  REQUIRE(images.size() == 3);
  CHECK(images[0].norm() == doctest::Approx(1.0));
  CHECK(images[1].norm() == 0.0);
  CHECK(images[2].norm() == 0.0);
}

TEST_CASE("coordinate witnesses hit exact basis vectors") {
  const auto z = GroupDescriptor::integers();
  const GeneratingSequence seq{z, 2, 2};
  const LocalSpan span = build_span(seq, ball(z, standard_generators(z), 1), 2);
  const SoficLevel level = folner_cyclic(9);
  const auto perms = evaluate_span_words(level, span);

  std::vector<Eigen::VectorXcd> images;
  for (std::uint32_t j = 0; j < level.degree; ++j) {
    for (int k = 1; k <= span.generator_limit; ++k) {
      const LinearMapMatrix t = witness_lp(level, span, perms, j, k, 2.0);
      const auto gi = generator_images(t, span, 2);
      // Generator k maps to exactly delta_j; the other generator to zero.
      CHECK(gi[static_cast<std::size_t>(k - 1)](j) == std::complex<double>(1.0, 0.0));
      CHECK(gi[static_cast<std::size_t>(k - 1)].norm() == doctest::Approx(1.0));
      CHECK(gi[static_cast<std::size_t>(2 - k)].norm() == 0.0);
      // Concatenating the generator images (as the dimension engine does)
      // places delta_j into block k of a d * glim vector.
      Eigen::VectorXcd concat = Eigen::VectorXcd::Zero(2 * 9);
      for (int b = 0; b < 2; ++b) concat.segment(9 * b, 9) = gi[static_cast<std::size_t>(b)];
      CHECK(concat((k - 1) * 9 + j) == std::complex<double>(1.0, 0.0));
      images.push_back(concat);
    }
  }
  // The concatenated images across all (j, k) are pairwise orthonormal.
  REQUIRE(images.size() == 18);
  for (std::size_t a = 0; a < images.size(); ++a) {
    for (std::size_t b = a + 1; b < images.size(); ++b) {
      CHECK(std::abs(images[a].dot(images[b])) < 1e-14);
    }
  }
  CHECK(witness_family_lp(level, span, 2, 2.0).size() == 18);
  CHECK_THROWS_AS(witness_family_lp(level, span, 3, 2.0), std::invalid_argument);
}

TEST_CASE("exact homomorphism levels give zero defect and unit norm") {
  const auto z = GroupDescriptor::integers();
  const GeneratingSequence seq{z, 1, 2};
  const auto f = ball(z, standard_generators(z), 1);
  const LocalSpan span = build_span(seq, f, 2);
  const SoficLevel level = folner_cyclic(12);
  const auto perms = evaluate_span_words(level, span);
  for (std::uint32_t j : {0u, 5u, 11u}) {
    const LinearMapMatrix t = witness_lp(level, span, perms, j, 1, 2.0);
    const DefectResult r = hom_defect(t, span, f, 2, level);
    CHECK(r.defect == 0.0);  // shifts are an exact homomorphism
    CHECK(r.norm.lower == doctest::Approx(1.0));
    CHECK(r.norm.upper == doctest::Approx(1.0));
    CHECK(classify_membership(r, 1.0, 0.1) == HomStatus::Pass);
  }
}

TEST_CASE("orbit collisions blow up the norm and fail the witness") {
  // Send both generators to the identity permutation: evaluation is still a
  // homomorphism (defect 0), but every span word lands on the same point, so
  // the witness matrix has 17 identical columns and norm sqrt(17) at p = 2.
  const auto f2 = GroupDescriptor::free_group(2);
  const GeneratingSequence seq{f2, 1, 2};
  const auto f = ball(f2, standard_generators(f2), 1);
  const LocalSpan span = build_span(seq, f, 2);
  SoficLevel degenerate{f2, 6, {Permutation::identity(6), Permutation::identity(6)}};
  const auto perms = evaluate_span_words(degenerate, span);
  const LinearMapMatrix t = witness_lp(degenerate, span, perms, 0, 1, 2.0);
  const DefectResult r = hom_defect(t, span, f, 2, degenerate);
  CHECK(r.defect == 0.0);
  CHECK(r.norm.lower == doctest::Approx(std::sqrt(17.0)));
  CHECK(classify_membership(r, 1.0, 0.1) == HomStatus::Fail);
}

TEST_CASE("membership classification separates pass, fail, undetermined") {
  DefectResult r;
  r.norm = NormBracket{0.9, 1.0, "test"};
  r.defect = 0.01;
  CHECK(classify_membership(r, 1.0, 0.1) == HomStatus::Pass);
  r.defect = 0.5;
  CHECK(classify_membership(r, 1.0, 0.1) == HomStatus::Fail);  // defect alone fails
  r.defect = 0.01;
  r.norm = NormBracket{1.2, 1.5, "test"};
  CHECK(classify_membership(r, 1.0, 0.1) == HomStatus::Fail);  // lower bound above C
  r.norm = NormBracket{0.9, 1.4, "test"};
  CHECK(classify_membership(r, 1.0, 0.1) == HomStatus::Undetermined);  // straddles C
}

TEST_CASE("averaging over an exactly represented finite group projects") {
  // Z/2 on 4 points as two 2-cycles: an exact representation with no fixed
  // points. E = {e, g} averages any map onto the equivariant ones.
  const auto z2 = GroupDescriptor::cyclic(2);
  const SoficLevel level = finite_block(2, 4);
  const std::vector<GroupWord> e_set = {identity_word(z2), reduce(z2, {1})};
  const GeneratingSequence seq{z2, 1, 1};
  const LocalSpan span = build_span(seq, e_set, 1);  // whole group = ball(1)
  REQUIRE(span.word_count() == 2);

  // Start from a deliberately non-equivariant map.
  LinearMapMatrix t;
  t.matrix = Eigen::MatrixXcd::Zero(4, span.dim());
  t.matrix(0, 0) = 1.0;
  t.matrix(2, 1) = std::complex<double>(0.0, 1.0);
  t.matrix(3, 1) = 0.25;
  t.p = 2.0;

  const DefectResult before = hom_defect(t, span, e_set, 1, level);
  CHECK(before.defect > 0.1);

  const LinearMapMatrix avg = averaging_projection(t, e_set, level, span);
  const DefectResult after = hom_defect(avg, span, e_set, 1, level);
  CHECK(after.defect < 1e-12);  // projected onto equivariant maps
  CHECK(after.norm.upper <= before.norm.upper + 1e-9);  // contraction

  const LinearMapMatrix avg2 = averaging_projection(avg, e_set, level, span);
  CHECK((avg2.matrix - avg.matrix).norm() < 1e-12);  // idempotent
}

TEST_CASE("Schatten witnesses are rank-one isometric images") {
  const auto z = GroupDescriptor::integers();
  const GeneratingSequence seq{z, 1, 2};
  const auto f = ball(z, standard_generators(z), 1);
  const LocalSpan span = build_span(seq, f, 2);
  const SoficLevel level = folner_cyclic(5);
  const auto perms = evaluate_span_words(level, span);

  // Matrix-unit pairs (e_a, e_b): images are matrix units at permuted
  // indices, pairwise orthonormal in S^2 across all d^2 pairs.
  std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> pairs;
  for (std::uint32_t a = 0; a < 5; ++a) {
    for (std::uint32_t b = 0; b < 5; ++b) {
      Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(5);
      Eigen::VectorXcd eta = Eigen::VectorXcd::Zero(5);
      xi(a) = 1.0;
      eta(b) = 1.0;
      pairs.emplace_back(xi, eta);
    }
  }
  const auto family = witness_family_schatten_conjugate(level, span, pairs, 2.0);
  REQUIRE(family.size() == 25);
  std::vector<Eigen::VectorXcd> images;
  for (const auto& t : family) {
    const DefectResult r = hom_defect(t, span, f, 2, level);
    CHECK(r.defect == 0.0);
    CHECK(r.norm.upper == doctest::Approx(1.0));
    images.push_back(generator_images(t, span, 1)[0]);
  }
  for (std::size_t a = 0; a < images.size(); ++a) {
    CHECK(images[a].norm() == doctest::Approx(1.0));
    for (std::size_t b = a + 1; b < images.size(); ++b) {
      CHECK(std::abs(images[a].dot(images[b])) < 1e-12);
    }
  }

  // Non-unit xi is rejected.
  Eigen::VectorXcd big = Eigen::VectorXcd::Zero(5);
  big(0) = 2.0;
  CHECK_THROWS_AS(witness_schatten_conjugate(level, span, perms, big, big / 2.0, 2.0),
                  std::invalid_argument);

  // Multiply-mode witness from A = I/sqrt(5) sends delta_s to a scaled
  // permutation unitary of sigma(s); defect vanishes on the exact level too.
  const Eigen::MatrixXcd unit_a = Eigen::MatrixXcd::Identity(5, 5) / std::sqrt(5.0);
  const LinearMapMatrix tm = witness_schatten_multiply(level, span, perms, unit_a, 2.0);
  const DefectResult rm = hom_defect(tm, span, f, 2, level);
  CHECK(rm.defect < 1e-12);
}

TEST_CASE("conjugation codomain action matches explicit matrix conjugation") {
  const Permutation sigma({1, 2, 0});
  Eigen::MatrixXcd a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, std::complex<double>(0, 9);
  const Eigen::MatrixXcd p = permutation_matrix(sigma);
  const Eigen::VectorXcd via_action =
      codomain_action(sigma, flatten(a), LinearMapMatrix::Codomain::MatrixConjugate, 3);
  const Eigen::VectorXcd direct = flatten(p * a * p.adjoint());
  CHECK((via_action - direct).norm() < 1e-14);
  const Eigen::VectorXcd via_mult =
      codomain_action(sigma, flatten(a), LinearMapMatrix::Codomain::MatrixMultiply, 3);
  CHECK((via_mult - flatten(p * a)).norm() < 1e-14);
}

TEST_CASE("seeded unit pairs replay and normalize") {
  const auto pairs = seeded_unit_pairs(7, 4, 99);
  const auto again = seeded_unit_pairs(7, 4, 99);
  REQUIRE(pairs.size() == 4);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(pairs[i].first.norm() == doctest::Approx(1.0));
    CHECK(pairs[i].second.norm() == doctest::Approx(1.0));
    CHECK((pairs[i].first - again[i].first).norm() == 0.0);
  }
  const auto other = seeded_unit_pairs(7, 4, 100);
  CHECK((pairs[0].first - other[0].first).norm() > 0.0);
}

TEST_CASE("norm bracket dispatch follows the codomain tag") {
  const auto z = GroupDescriptor::integers();
  const GeneratingSequence seq{z, 1, 1};
  const auto f = ball(z, standard_generators(z), 1);
  const LocalSpan span = build_span(seq, f, 1);
  const SoficLevel level = folner_cyclic(4);
  const auto perms = evaluate_span_words(level, span);
  const LinearMapMatrix tv = witness_lp(level, span, perms, 0, 1, 2.0);
  CHECK(map_norm_bracket(tv).method.find("svd") != std::string::npos);
  const auto pairs = seeded_unit_pairs(4, 1, 3);
  const LinearMapMatrix ts =
      witness_schatten_conjugate(level, span, perms, pairs[0].first, pairs[0].second, 2.0);
  CHECK(map_norm_bracket(ts).method.find("flatten") != std::string::npos);
}
