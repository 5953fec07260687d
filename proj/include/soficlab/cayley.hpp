#pragma once
// Truncated Cayley graphs (balls in the word metric) and the discrete
// calculus on them: coboundary/boundary operators, the normalized adjacency
// (random walk) operator with zero padding at the truncation boundary, a
// discrete Hodge decomposition on interior-supported edge functions, the
// explicit harmonic edge function on free-group trees, telescoping
// least-squares residuals, and geodesic integration.
//
// Edge convention: every edge is stored once, oriented from the shorter
// word to the longer (tail = parent, head = child, label = the signed
// generator letter appended); an edge function's value is f(tail, head),
// extended antisymmetrically. The boundary operator is the transpose of the
// coboundary: (boundary f)(x) = sum over incident edges of +-f, with + at
// the head and - at the tail, so boundary(coboundary g) is the graph
// Laplacian (positive semidefinite).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "soficlab/group.hpp"

namespace soficlab {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TruncatedCayleyGraph {
  GroupDescriptor group;
  int radius = 0;

  struct Edge {
    int tail = 0;  // parent (shorter word)
    int head = 0;  // child (longer word)
    long long label = 0;  // signed generator letter of the step tail -> head
  };

  std::vector<GroupWord> vertices;  // breadth-first, vertices[0] = identity
  std::vector<int> shell;           // word length per vertex
  std::vector<Edge> edges;
  std::vector<std::vector<int>> neighbors;                  // adjacency
  std::vector<std::vector<std::pair<int, int>>> incident;   // (edge, +1 head / -1 tail)
  std::vector<int> parent_edge;                             // -1 at the root

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  bool interior(int v) const { return shell[static_cast<std::size_t>(v)] < radius; }
  int find_vertex(const GroupWord& w) const;
  // Degree every interior vertex has in the untruncated graph.
  int full_degree() const;

 private:
  friend TruncatedCayleyGraph truncated_cayley(const GroupDescriptor&, int, std::size_t);
  std::unordered_map<std::string, int> index_;
};

using EdgeFunction = Eigen::VectorXd;
using VertexFunction = Eigen::VectorXd;

TruncatedCayleyGraph truncated_cayley(const GroupDescriptor& g, int radius,
                                      std::size_t cap = kDefaultCapacity);

// (coboundary g)(e) = g(head) - g(tail).
EdgeFunction coboundary(const TruncatedCayleyGraph& graph, const VertexFunction& g);

// Transpose of the coboundary (see header comment).
VertexFunction boundary(const TruncatedCayleyGraph& graph, const EdgeFunction& f);

// Normalized adjacency with zero padding: (A f)(x) = (1/full_degree) *
// sum of f over the neighbours present in the ball. Self-adjoint on l^2.
VertexFunction random_walk_apply(const TruncatedCayleyGraph& graph, const VertexFunction& f);
Eigen::MatrixXd random_walk_operator(const TruncatedCayleyGraph& graph);

// Power-iteration estimate of ||A||_2 via A^2 (the spectrum is symmetric on
// bipartite balls), with a deterministic seeded start. Stops when two
// successive estimates differ by at most `tol`; throws ConvergenceError
// past `max_iterations`.
double spectral_gap_estimate(const TruncatedCayleyGraph& graph, double tol = 1e-8,
                             int max_iterations = 20000, std::uint64_t seed = 7);

struct HodgeParts {
  VertexFunction potential;   // interior-supported g with f ~ coboundary g + harmonic
  EdgeFunction harmonic;      // boundary-free on the interior
  double interior_residual = 0.0;   // max |boundary(harmonic)| over interior vertices
  double orthogonality = 0.0;       // |<coboundary g, harmonic>| over all edges
};

// Splits f into coboundary(potential) + harmonic by solving the interior
// Laplace problem with conjugate gradients (relative tolerance 1e-10).
// Rejects inputs whose l^2 mass is concentrated (> half) on edges touching
// the outer shell: the decomposition guarantees hold on the interior, so
// boundary-dominated inputs are degenerate for it.
HodgeParts hodge_decompose(const TruncatedCayleyGraph& graph, const EdgeFunction& f);

// The explicit harmonic edge function on the free-group tree: the edge into
// a child at shell k carries sign(first letter) * base^{-(k-1)} with base =
// 2 * rank - 1 (3 for rank 2, the classical 1/3-weights). Boundary-free at
// every interior vertex.
EdgeFunction harmonic_generator(const TruncatedCayleyGraph& graph);

// Exact integer verification that the harmonic generator has zero boundary
// at every interior vertex (values scaled by base^{radius-1}).
bool harmonic_generator_boundary_exact(const TruncatedCayleyGraph& graph);

// Closed-form partial sum of ||f||_p^p over shells 1..shells for the
// harmonic generator on the rank-n tree: shell k holds 2n (2n-1)^{k-1}
// edges of value base^{-(k-1)}.
double harmonic_generator_pnorm_partial(int rank, double p, int shells);

// Graph-enumeration counterpart of the partial sum (shells <= radius).
double harmonic_generator_pnorm_enumerated(const TruncatedCayleyGraph& graph, double p,
                                           int shells);

// Least-squares distance (dense QR) from the basis edge (identity ->
// a_target) to the span of interior vertex-indicator coboundaries plus all
// edges labelled by the generators in `span_labels`. Decays as the radius
// grows; the numerical footprint of the density/telescoping step.
double telescoping_residual(const TruncatedCayleyGraph& graph, int target_label,
                            const std::vector<int>& span_labels);

// Prefix sums of f along the geodesics from the identity:
// (integral f)(x) = sum of f over the parent chain of x. Left inverse of
// the coboundary on trees: coboundary(integral f) = f.
VertexFunction geodesic_integral(const TruncatedCayleyGraph& graph, const EdgeFunction& f);

// Compact JSON forms for persistence and external inspection.
std::string graph_to_json(const TruncatedCayleyGraph& graph);
std::string edge_function_to_json(const TruncatedCayleyGraph& graph, const EdgeFunction& f);

}  // namespace soficlab
