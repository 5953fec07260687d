#include "soficlab/cayley.hpp"

#include <cmath>
#include <cstdlib>

#include <json.hpp>

#include "soficlab/rng.hpp"

namespace soficlab {

int TruncatedCayleyGraph::find_vertex(const GroupWord& w) const {
  const auto it = index_.find(word_key(w));
  return it == index_.end() ? -1 : it->second;
}

int TruncatedCayleyGraph::full_degree() const {
  // Standard generators and their inverses, counting distinct steps.
  int deg = 0;
  for (const auto& s : standard_generators(group)) {
    deg += (s == inverse(s)) ? 1 : 2;
  }
  return deg;
}

TruncatedCayleyGraph truncated_cayley(const GroupDescriptor& g, int radius, std::size_t cap) {
  if (radius < 1) throw std::invalid_argument("truncated_cayley: radius must be >= 1");
  TruncatedCayleyGraph graph;
  graph.group = g;
  graph.radius = radius;

  std::vector<GroupWord> steps;
  std::vector<long long> labels;
  {
    const auto gens = standard_generators(g);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      steps.push_back(gens[i]);
      labels.push_back(static_cast<long long>(i) + 1);
      const GroupWord inv = inverse(gens[i]);
      if (!(inv == gens[i])) {
        steps.push_back(inv);
        labels.push_back(-(static_cast<long long>(i) + 1));
      }
    }
  }

  graph.vertices.push_back(identity_word(g));
  graph.shell.push_back(0);
  graph.parent_edge.push_back(-1);
  graph.index_.emplace(word_key(graph.vertices.front()), 0);
  std::size_t frontier_begin = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t frontier_end = graph.vertices.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      const GroupWord base = graph.vertices[i];
      for (std::size_t si = 0; si < steps.size(); ++si) {
        GroupWord next = multiply(base, steps[si]);
        if (word_length(next) <= word_length(base)) continue;  // backtracking or lateral
        std::string key = word_key(next);
        const auto it = graph.index_.find(key);
        int head;
        if (it == graph.index_.end()) {
          if (graph.vertices.size() + 1 > cap) {
            throw CapacityError("truncated_cayley: ball exceeds capacity " + std::to_string(cap));
          }
          head = static_cast<int>(graph.vertices.size());
          graph.index_.emplace(std::move(key), head);
          graph.vertices.push_back(std::move(next));
          graph.shell.push_back(r + 1);
          graph.parent_edge.push_back(-1);
        } else {
          head = it->second;
        }
        // One edge per unordered pair: recorded while scanning the tail.
        graph.edges.push_back({static_cast<int>(i), head, labels[si]});
        if (graph.parent_edge[static_cast<std::size_t>(head)] < 0) {
          graph.parent_edge[static_cast<std::size_t>(head)] =
              static_cast<int>(graph.edges.size()) - 1;
        }
      }
    }
    frontier_begin = frontier_end;
  }

  graph.neighbors.assign(graph.vertices.size(), {});
  graph.incident.assign(graph.vertices.size(), {});
  for (int e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edges[static_cast<std::size_t>(e)];
    graph.neighbors[static_cast<std::size_t>(edge.tail)].push_back(edge.head);
    graph.neighbors[static_cast<std::size_t>(edge.head)].push_back(edge.tail);
    graph.incident[static_cast<std::size_t>(edge.head)].emplace_back(e, +1);
    graph.incident[static_cast<std::size_t>(edge.tail)].emplace_back(e, -1);
  }
  return graph;
}

EdgeFunction coboundary(const TruncatedCayleyGraph& graph, const VertexFunction& g) {
  if (g.size() != graph.vertex_count()) throw std::invalid_argument("coboundary: size mismatch");
  EdgeFunction f(graph.edge_count());
  for (int e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edges[static_cast<std::size_t>(e)];
    f[e] = g[edge.head] - g[edge.tail];
  }
  return f;
}

VertexFunction boundary(const TruncatedCayleyGraph& graph, const EdgeFunction& f) {
  if (f.size() != graph.edge_count()) throw std::invalid_argument("boundary: size mismatch");
  VertexFunction g = VertexFunction::Zero(graph.vertex_count());
  for (int e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edges[static_cast<std::size_t>(e)];
    g[edge.head] += f[e];
    g[edge.tail] -= f[e];
  }
  return g;
}

VertexFunction random_walk_apply(const TruncatedCayleyGraph& graph, const VertexFunction& f) {
  if (f.size() != graph.vertex_count()) {
    throw std::invalid_argument("random_walk_apply: size mismatch");
  }
  const double scale = 1.0 / static_cast<double>(graph.full_degree());
  VertexFunction out = VertexFunction::Zero(graph.vertex_count());
  for (int v = 0; v < graph.vertex_count(); ++v) {
    double acc = 0.0;
    for (int u : graph.neighbors[static_cast<std::size_t>(v)]) acc += f[u];
    out[v] = scale * acc;
  }
  return out;
}

Eigen::MatrixXd random_walk_operator(const TruncatedCayleyGraph& graph) {
  const int n = graph.vertex_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  const double scale = 1.0 / static_cast<double>(graph.full_degree());
  for (const auto& edge : graph.edges) {
    a(edge.head, edge.tail) += scale;
    a(edge.tail, edge.head) += scale;
  }
  return a;
}

double spectral_gap_estimate(const TruncatedCayleyGraph& graph, double tol, int max_iterations,
                             std::uint64_t seed) {
  const int n = graph.vertex_count();
  SplitMix64 gen(seed);
  VertexFunction x(n);
  for (int i = 0; i < n; ++i) x[i] = gen.next_double() - 0.5;
  x /= x.norm();
  double previous = -1.0;
  for (int it = 0; it < max_iterations; ++it) {
    const VertexFunction y = random_walk_apply(graph, random_walk_apply(graph, x));
    const double rayleigh = x.dot(y);  // top eigenvalue of A^2
    const double estimate = std::sqrt(std::max(rayleigh, 0.0));
    const double ynorm = y.norm();
    if (ynorm == 0.0) return 0.0;
    x = y / ynorm;
    if (previous >= 0.0 && std::abs(estimate - previous) <= tol) return estimate;
    previous = estimate;
  }
  throw ConvergenceError("spectral_gap_estimate: power iteration did not converge");
}

namespace {

// (Laplacian g)(v) for interior-supported g, restricted to interior rows.
VertexFunction interior_laplacian(const TruncatedCayleyGraph& graph, const VertexFunction& g) {
  const double deg = graph.full_degree();
  VertexFunction out = VertexFunction::Zero(graph.vertex_count());
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (!graph.interior(v)) continue;
    double acc = deg * g[v];
    for (int u : graph.neighbors[static_cast<std::size_t>(v)]) {
      if (graph.interior(u)) acc -= g[u];
    }
    out[v] = acc;
  }
  return out;
}

}  // namespace

HodgeParts hodge_decompose(const TruncatedCayleyGraph& graph, const EdgeFunction& f) {
  if (f.size() != graph.edge_count()) throw std::invalid_argument("hodge_decompose: size mismatch");
  const double total = f.norm();
  if (total > 0.0) {
    double boundary_mass = 0.0;
    for (int e = 0; e < graph.edge_count(); ++e) {
      const auto& edge = graph.edges[static_cast<std::size_t>(e)];
      if (!graph.interior(edge.head) || !graph.interior(edge.tail)) boundary_mass += f[e] * f[e];
    }
    if (boundary_mass > 0.25 * total * total) {
      throw std::invalid_argument(
          "hodge_decompose: input supported on the truncation boundary (more than half its l^2 "
          "mass on outer-shell edges)");
    }
  }

  // Conjugate gradients on the interior Laplace problem L g = boundary(f).
  const VertexFunction rhs_full = boundary(graph, f);
  VertexFunction rhs = VertexFunction::Zero(graph.vertex_count());
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (graph.interior(v)) rhs[v] = rhs_full[v];
  }
  VertexFunction g = VertexFunction::Zero(graph.vertex_count());
  VertexFunction r = rhs;
  VertexFunction p = r;
  const double rhs_norm = rhs.norm();
  double rs = r.squaredNorm();
  const double target = std::max(rhs_norm * 1e-10, 1e-300);
  const int max_iters = 10 * graph.vertex_count() + 50;
  int it = 0;
  while (std::sqrt(rs) > target && it < max_iters) {
    const VertexFunction lp = interior_laplacian(graph, p);
    const double denom = p.dot(lp);
    if (denom <= 0.0) break;  // exact kernel hit; L is PD on the interior, so only at rs == 0
    const double alpha = rs / denom;
    g += alpha * p;
    r -= alpha * lp;
    const double rs_next = r.squaredNorm();
    p = r + (rs_next / rs) * p;
    rs = rs_next;
    ++it;
  }
  if (std::sqrt(rs) > target) {
    throw ConvergenceError("hodge_decompose: conjugate gradients stalled");
  }

  HodgeParts parts;
  parts.potential = g;
  parts.harmonic = f - coboundary(graph, g);
  const VertexFunction check = boundary(graph, parts.harmonic);
  double worst = 0.0;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (graph.interior(v)) worst = std::max(worst, std::abs(check[v]));
  }
  parts.interior_residual = worst;
  parts.orthogonality = std::abs(coboundary(graph, g).dot(parts.harmonic));
  return parts;
}

namespace {
int tree_base(const GroupDescriptor& g) {
  if (g.kind != GroupKind::Free || g.param < 2) {
    throw std::invalid_argument("harmonic generator requires a free group of rank >= 2");
  }
  return 2 * g.param - 1;
}
}  // namespace

EdgeFunction harmonic_generator(const TruncatedCayleyGraph& graph) {
  const int base = tree_base(graph.group);
  EdgeFunction f = EdgeFunction::Zero(graph.edge_count());
  for (int e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edges[static_cast<std::size_t>(e)];
    const GroupWord& child = graph.vertices[static_cast<std::size_t>(edge.head)];
    const int k = graph.shell[static_cast<std::size_t>(edge.head)];
    const double sign = child.letters.front() > 0 ? 1.0 : -1.0;
    f[e] = sign * std::pow(static_cast<double>(base), -(k - 1));
  }
  return f;
}

bool harmonic_generator_boundary_exact(const TruncatedCayleyGraph& graph) {
  const int base = tree_base(graph.group);
  // Scale shell-k values by base^(radius-1): the edge into shell k carries
  // +-base^(radius-k), an exact 64-bit integer for desk radii.
  std::vector<long long> powers(static_cast<std::size_t>(graph.radius) + 1, 1);
  for (int k = 1; k <= graph.radius; ++k) {
    if (powers[static_cast<std::size_t>(k - 1)] > (1LL << 61) / base) {
      throw std::invalid_argument("harmonic_generator_boundary_exact: radius too large for exact check");
    }
    powers[static_cast<std::size_t>(k)] = powers[static_cast<std::size_t>(k - 1)] * base;
  }
  std::vector<long long> sums(static_cast<std::size_t>(graph.vertex_count()), 0);
  for (const auto& edge : graph.edges) {
    const GroupWord& child = graph.vertices[static_cast<std::size_t>(edge.head)];
    const int k = graph.shell[static_cast<std::size_t>(edge.head)];
    const long long value = (child.letters.front() > 0 ? 1LL : -1LL) *
                            powers[static_cast<std::size_t>(graph.radius - k)];
    sums[static_cast<std::size_t>(edge.head)] += value;
    sums[static_cast<std::size_t>(edge.tail)] -= value;
  }
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (graph.interior(v) && sums[static_cast<std::size_t>(v)] != 0) return false;
  }
  return true;
}

double harmonic_generator_pnorm_partial(int rank, double p, int shells) {
  if (rank < 2) throw std::invalid_argument("harmonic generator requires rank >= 2");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  const long double base = 2.0L * rank - 1.0L;
  const long double edges_per = 2.0L * rank;  // shell k: 2n (2n-1)^(k-1) edges
  long double acc = 0.0L;
  for (int k = 1; k <= shells; ++k) {
    const long double count = edges_per * std::pow(base, static_cast<long double>(k - 1));
    const long double value = std::pow(base, -static_cast<long double>(p) * (k - 1));
    acc += count * value;
  }
  return static_cast<double>(acc);
}

double harmonic_generator_pnorm_enumerated(const TruncatedCayleyGraph& graph, double p,
                                           int shells) {
  if (shells > graph.radius) {
    throw std::invalid_argument("enumerated partial sum needs shells <= radius");
  }
  const EdgeFunction f = harmonic_generator(graph);
  double acc = 0.0;
  for (int e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edges[static_cast<std::size_t>(e)];
    if (graph.shell[static_cast<std::size_t>(edge.head)] <= shells) {
      acc += std::pow(std::abs(f[e]), p);
    }
  }
  return acc;
}

double telescoping_residual(const TruncatedCayleyGraph& graph, int target_label,
                            const std::vector<int>& span_labels) {
  // Target column: the basis edge identity -> a_{target_label}.
  int target_edge = -1;
  for (int e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edges[static_cast<std::size_t>(e)];
    if (edge.tail == 0 && edge.label == target_label) {
      target_edge = e;
      break;
    }
  }
  if (target_edge < 0) throw std::invalid_argument("telescoping_residual: target edge not found");

  std::vector<int> interior_vertices;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (graph.interior(v)) interior_vertices.push_back(v);
  }
  std::vector<int> span_edges;
  for (int e = 0; e < graph.edge_count(); ++e) {
    const long long l = std::llabs(graph.edges[static_cast<std::size_t>(e)].label);
    for (int s : span_labels) {
      if (l == s) {
        span_edges.push_back(e);
        break;
      }
    }
  }

  const auto rows = static_cast<Eigen::Index>(graph.edge_count());
  const auto cols =
      static_cast<Eigen::Index>(interior_vertices.size() + span_edges.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::Index c = 0;
  for (int v : interior_vertices) {
    for (const auto& [e, sign] : graph.incident[static_cast<std::size_t>(v)]) {
      m(e, c) = sign;  // coboundary of the vertex indicator
    }
    ++c;
  }
  for (int e : span_edges) {
    m(e, c++) = 1.0;
  }
  Eigen::VectorXd target = Eigen::VectorXd::Zero(rows);
  target[target_edge] = 1.0;
  const Eigen::VectorXd coeff = m.colPivHouseholderQr().solve(target);
  return (m * coeff - target).norm();
}

VertexFunction geodesic_integral(const TruncatedCayleyGraph& graph, const EdgeFunction& f) {
  if (f.size() != graph.edge_count()) {
    throw std::invalid_argument("geodesic_integral: size mismatch");
  }
  VertexFunction out = VertexFunction::Zero(graph.vertex_count());
  // Vertices are in breadth-first order, so parents precede children.
  for (int v = 1; v < graph.vertex_count(); ++v) {
    const int pe = graph.parent_edge[static_cast<std::size_t>(v)];
    const auto& edge = graph.edges[static_cast<std::size_t>(pe)];
    out[v] = out[edge.tail] + f[pe];
  }
  return out;
}

std::string graph_to_json(const TruncatedCayleyGraph& graph) {
  nlohmann::json j;
  j["group"] = graph.group.name();
  j["radius"] = graph.radius;
  j["vertices"] = nlohmann::json::array();
  for (const auto& w : graph.vertices) j["vertices"].push_back(word_key(w));
  j["edges"] = nlohmann::json::array();
  for (const auto& e : graph.edges) {
    j["edges"].push_back({{"tail", e.tail}, {"head", e.head}, {"label", e.label}});
  }
  return j.dump();
}

std::string edge_function_to_json(const TruncatedCayleyGraph& graph, const EdgeFunction& f) {
  nlohmann::json j;
  j["edge_count"] = graph.edge_count();
  j["values"] = std::vector<double>(f.data(), f.data() + f.size());
  return j.dump();
}

}  // namespace soficlab
