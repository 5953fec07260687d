#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "soficlab/cayley.hpp"
#include "soficlab/rng.hpp"

using namespace soficlab;

namespace {

EdgeFunction seeded_interior_edges(const TruncatedCayleyGraph& graph, std::uint64_t seed) {
  SplitMix64 gen(seed);
  EdgeFunction f = EdgeFunction::Zero(graph.edge_count());
  for (int e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edges[static_cast<std::size_t>(e)];
    if (graph.shell[static_cast<std::size_t>(edge.head)] < graph.radius) {
      f(e) = gen.next_double() - 0.5;
    }
  }
  return f;
}

}  // namespace

TEST_CASE("ball graphs have the right shape") {
  const auto f2 = GroupDescriptor::free_group(2);
  const TruncatedCayleyGraph tree = truncated_cayley(f2, 2);
  CHECK(tree.vertex_count() == 17);
  CHECK(tree.edge_count() == 16);  // a tree: V - 1
  CHECK(tree.full_degree() == 4);
  CHECK(tree.parent_edge[0] == -1);
  CHECK(is_identity(tree.vertices[0]));

  const auto z = GroupDescriptor::integers();
  const TruncatedCayleyGraph path = truncated_cayley(z, 3);
  CHECK(path.vertex_count() == 7);
  CHECK(path.edge_count() == 6);
  CHECK(path.full_degree() == 2);

  // The plane ball contains cycles: V = 13, E = 16 at radius 2 (Euler
  // characteristic detects the four unit squares).
  const auto z2 = GroupDescriptor::integers_squared();
  const TruncatedCayleyGraph plane = truncated_cayley(z2, 2);
  CHECK(plane.vertex_count() == 13);
  CHECK(plane.edge_count() == 16);
  CHECK(plane.full_degree() == 4);

  // Orientation: every edge goes from the shorter word to the longer one.
  for (const auto& e : plane.edges) {
    CHECK(plane.shell[static_cast<std::size_t>(e.head)] ==
          plane.shell[static_cast<std::size_t>(e.tail)] + 1);
  }

  CHECK_THROWS_AS(truncated_cayley(f2, 0), std::invalid_argument);
  CHECK_THROWS_AS(truncated_cayley(f2, 10, 100), CapacityError);
}

TEST_CASE("boundary is the transpose of the coboundary") {
  const auto z2 = GroupDescriptor::integers_squared();
  const TruncatedCayleyGraph graph = truncated_cayley(z2, 3);
  SplitMix64 gen(5);
  VertexFunction g(graph.vertex_count());
  EdgeFunction f(graph.edge_count());
  for (int v = 0; v < graph.vertex_count(); ++v) g(v) = gen.next_double() - 0.5;
  for (int e = 0; e < graph.edge_count(); ++e) f(e) = gen.next_double() - 0.5;
  const double lhs = coboundary(graph, g).dot(f);
  const double rhs = g.dot(boundary(graph, f));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("geodesic integration inverts the coboundary on trees") {
  const auto f2 = GroupDescriptor::free_group(2);
  const TruncatedCayleyGraph tree = truncated_cayley(f2, 3);
  SplitMix64 gen(6);
  EdgeFunction f(tree.edge_count());
  for (int e = 0; e < tree.edge_count(); ++e) f(e) = gen.next_double() - 0.5;
  const VertexFunction g = geodesic_integral(tree, f);
  CHECK(g(0) == 0.0);
  CHECK((coboundary(tree, g) - f).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("random walk operator matches its matrix form and is self-adjoint") {
  const auto f2 = GroupDescriptor::free_group(2);
  const TruncatedCayleyGraph tree = truncated_cayley(f2, 3);
  const Eigen::MatrixXd a = random_walk_operator(tree);
  CHECK((a - a.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
  SplitMix64 gen(8);
  VertexFunction x(tree.vertex_count());
  for (int v = 0; v < tree.vertex_count(); ++v) x(v) = gen.next_double() - 0.5;
  CHECK((random_walk_apply(tree, x) - a * x).lpNorm<Eigen::Infinity>() < 1e-14);
  // Row sums at interior vertices are exactly 1 (all 4 neighbours present).
  for (int v = 0; v < tree.vertex_count(); ++v) {
    if (tree.interior(v)) CHECK(a.row(v).sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("walk norm estimates grow with the radius and stay under the free bound") {
  // Frozen reference values for the top eigenvalue of the truncated walk
  // operator on F_2 balls; the sequence increases toward 2*sqrt(3)/4 ~ 0.866
  // and must stay under 0.9 at every finite radius.
  const auto f2 = GroupDescriptor::free_group(2);
  const double e4 = spectral_gap_estimate(truncated_cayley(f2, 4));
  const double e6 = spectral_gap_estimate(truncated_cayley(f2, 6));
  const double e8 = spectral_gap_estimate(truncated_cayley(f2, 8));
  CHECK(e4 == doctest::Approx(0.7722281587).epsilon(1e-5));
  CHECK(e6 == doctest::Approx(0.8113619197).epsilon(1e-5));
  CHECK(e8 == doctest::Approx(0.8300148976).epsilon(1e-5));
  CHECK(e4 < e6);
  CHECK(e6 < e8);
  CHECK(e8 < 0.9);
  // An impossible iteration budget reports non-convergence instead of a
  // silently unconverged number.
  CHECK_THROWS_AS(spectral_gap_estimate(truncated_cayley(f2, 4), 1e-14, 2), ConvergenceError);
}

TEST_CASE("interior-supported functions decompose into gradient plus harmonic") {
  const auto f2 = GroupDescriptor::free_group(2);
  const TruncatedCayleyGraph tree = truncated_cayley(f2, 4);
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    const EdgeFunction f = seeded_interior_edges(tree, seed);
    const HodgeParts parts = hodge_decompose(tree, f);
    CHECK(parts.interior_residual <= 1e-8);
    CHECK(parts.orthogonality <= 1e-8);
    // The pieces recompose to f.
    const EdgeFunction recomposed = coboundary(tree, parts.potential) + parts.harmonic;
    CHECK((recomposed - f).lpNorm<Eigen::Infinity>() < 1e-10);
    // Decomposing the harmonic part again changes nothing.
    const HodgeParts again = hodge_decompose(tree, parts.harmonic);
    CHECK(again.potential.norm() <= 1e-8);
    CHECK((again.harmonic - parts.harmonic).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
  // Mass concentrated on outer-shell edges is rejected.
  EdgeFunction boundary_heavy = EdgeFunction::Zero(tree.edge_count());
  for (int e = 0; e < tree.edge_count(); ++e) {
    if (tree.shell[static_cast<std::size_t>(tree.edges[static_cast<std::size_t>(e)].head)] ==
        tree.radius) {
      boundary_heavy(e) = 1.0;
    }
  }
  CHECK_THROWS_AS(hodge_decompose(tree, boundary_heavy), std::invalid_argument);
}

TEST_CASE("the explicit tree cocycle is exactly harmonic") {
  const auto f2 = GroupDescriptor::free_group(2);
  for (int radius : {4, 6}) {
    const TruncatedCayleyGraph tree = truncated_cayley(f2, radius);
    CHECK(harmonic_generator_boundary_exact(tree));
    const EdgeFunction f = harmonic_generator(tree);
    const VertexFunction b = boundary(tree, f);
    for (int v = 0; v < tree.vertex_count(); ++v) {
      if (tree.interior(v)) CHECK(std::abs(b(v)) < 1e-14);
    }
    // First-shell edges carry +-1 with the sign of the generator letter.
    for (int e = 0; e < tree.edge_count(); ++e) {
      const auto& edge = tree.edges[static_cast<std::size_t>(e)];
      if (edge.tail == 0) CHECK(std::abs(f(e)) == doctest::Approx(1.0));
    }
  }
  const auto z = GroupDescriptor::integers();
  CHECK_THROWS_AS(harmonic_generator(truncated_cayley(z, 3)), std::invalid_argument);
}

TEST_CASE("cocycle p-norm partial sums match enumeration and their limit") {
  const auto f2 = GroupDescriptor::free_group(2);
  const TruncatedCayleyGraph tree = truncated_cayley(f2, 6);
  for (double p : {1.5, 2.0, 3.0}) {
    for (int shells : {1, 3, 6}) {
      CHECK(harmonic_generator_pnorm_enumerated(tree, p, shells) ==
            doctest::Approx(harmonic_generator_pnorm_partial(2, p, shells)).epsilon(1e-12));
    }
    // Geometric tail: the partial sums converge to 4 / (1 - 3^(1-p)).
    const double limit = 4.0 / (1.0 - std::pow(3.0, 1.0 - p));
    CHECK(std::abs(harmonic_generator_pnorm_partial(2, p, 30) - limit) < 1e-6);
    CHECK(harmonic_generator_pnorm_partial(2, p, 5) < limit);
  }
  // p = 1 diverges linearly: shell terms are constant 4.
  CHECK(harmonic_generator_pnorm_partial(2, 1.0, 10) == doctest::Approx(40.0));
  CHECK_THROWS_AS(harmonic_generator_pnorm_enumerated(tree, 2.0, 7), std::invalid_argument);
}

TEST_CASE("telescoping residuals shrink at the frozen rate") {
  const auto f2 = GroupDescriptor::free_group(2);
  const std::vector<double> expected = {0.5, 0.4082482905, 0.3535533906, 0.3162277660};
  double prev = 1.0;
  for (int radius = 2; radius <= 5; ++radius) {
    const double r = telescoping_residual(truncated_cayley(f2, radius), 2, {1});
    CHECK(r == doctest::Approx(expected[static_cast<std::size_t>(radius - 2)]).epsilon(1e-9));
    CHECK(r == doctest::Approx(1.0 / std::sqrt(2.0 * radius)).epsilon(1e-9));
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("graphs and edge functions serialize to JSON") {
  const auto f2 = GroupDescriptor::free_group(2);
  const TruncatedCayleyGraph tree = truncated_cayley(f2, 2);
  const auto graph_doc = nlohmann::json::parse(graph_to_json(tree));
  CHECK(graph_doc["vertices"].size() == 17);
  CHECK(graph_doc["edges"].size() == 16);
  CHECK(graph_doc["radius"] == 2);
  const auto fn_doc = nlohmann::json::parse(edge_function_to_json(tree, harmonic_generator(tree)));
  CHECK(fn_doc["values"].size() == 16);
}
