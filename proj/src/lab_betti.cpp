#include <algorithm>
#include <chrono>
#include <string>

#include "soficlab/cayley.hpp"
#include "soficlab/lab.hpp"

namespace soficlab {

// First-cohomology bracket for a free group of rank n, from the exact
// sequence 0 -> l^p(G) -> l^p(edges) = l^p(G, C^n) -> H^1 -> 0:
//  * upper bound: the quotient is spanned by n - 1 generator classes, so
//    the normalized dimension is at most n - 1 at every level;
//  * lower bound: subadditivity gives dim(edges) <= dim(H^1) + dim(G), so
//    the H^1 lower bound is the computed edge-space lower bound minus the
//    computed whole-group upper bound, clamped at zero;
//  * evidence for the density step behind the upper bound: the residual of
//    one generator's basis edge against coboundaries plus the other
//    generator's translates, strictly decreasing with the truncation
//    radius.
DimensionReport run_betti(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.action != Action::Betti) throw ConfigError("run_betti: action must be betti");
  const int rank = cfg.group.param;

  DimensionReport rep;
  rep.config = cfg;

  if (rank == 1) {
    // The integers: every cocycle on the line integrates, so H^1 vanishes
    // and the bracket is exactly [0, 0].
    RungReport rung;
    rung.delta = cfg.delta;
    rung.eps = cfg.eps;
    for (std::uint32_t value : cfg.levels) {
      LevelReport lr;
      lr.degree = value;
      for (double eps : cfg.eps) {
        EpsRecord rec;
        rec.epsilon = eps;
        rec.lower_method = "exact-trivial";
        rec.normalized = normalize_bracket(0, 0, value);
        lr.eps_records.push_back(std::move(rec));
      }
      rung.levels.push_back(std::move(lr));
    }
    rep.rungs.push_back(std::move(rung));
    finalize_report(rep);
    return rep;
  }

  // Graph evidence, independent of the levels: distance of the second
  // generator's basis edge from span{coboundaries, first-generator edges}.
  std::vector<std::pair<std::string, double>> graph_evidence;
  for (int radius = 2; radius <= std::max(2, cfg.cayley_radius); ++radius) {
    const TruncatedCayleyGraph graph = truncated_cayley(cfg.group, radius, cfg.capacity);
    graph_evidence.emplace_back("telescoping_residual_r" + std::to_string(radius),
                                telescoping_residual(graph, 2, {1}));
  }

  ExperimentConfig engine = cfg;
  engine.m = std::max(cfg.m, rank);  // stage must expose all n generators
  const std::vector<GroupWord> f = stage_words(engine);
  const GeneratingSequence edge_seq{engine.group, rank, std::max(engine.m, rank)};
  const GeneratingSequence group_seq{engine.group, 1, std::max(engine.m, 1)};
  const LocalSpan edge_span = build_span(edge_seq, f, engine.m, engine.capacity);
  const LocalSpan group_span = build_span(group_seq, f, engine.m, engine.capacity);

  std::vector<SoficLevel> levels;
  levels.reserve(cfg.levels.size());
  for (std::uint32_t value : cfg.levels) levels.push_back(build_level(engine, value));

  for (int r = 0; r < cfg.rungs; ++r) {
    RungReport rung;
    rung.delta = cfg.delta / (1 << r);
    for (double e : cfg.eps) rung.eps.push_back(e / (1 << r));
    for (const auto& level : levels) {
      const auto start = std::chrono::steady_clock::now();
      const LevelReport edge_rep =
          witness_level_report(engine, level, edge_span, f, rung.delta, rung.eps, false);
      const LevelReport group_rep =
          witness_level_report(engine, level, group_span, f, rung.delta, rung.eps, false);

      LevelReport lr;
      lr.degree = level.degree;
      lr.witness_total = edge_rep.witness_total;
      lr.witness_passed = edge_rep.witness_passed;
      lr.witness_undetermined = edge_rep.witness_undetermined;
      lr.pass_fraction = edge_rep.pass_fraction;
      lr.max_defect = std::max(edge_rep.max_defect, group_rep.max_defect);
      for (std::size_t e = 0; e < rung.eps.size(); ++e) {
        const EpsRecord& edge_rec = edge_rep.eps_records[e];
        const EpsRecord& group_rec = group_rep.eps_records[e];
        EpsRecord rec;
        rec.epsilon = rung.eps[e];
        rec.lower_dim = std::max<long long>(0, edge_rec.lower_dim - group_rec.upper_dim);
        rec.upper_dim = static_cast<long long>(rank - 1) * level.degree;
        rec.lower_method = edge_rec.lower_method + "-minus-quotient";
        rec.normalized = normalize_bracket(static_cast<int>(rec.lower_dim),
                                           static_cast<int>(rec.upper_dim), level.degree);
        lr.eps_records.push_back(std::move(rec));
      }
      lr.diagnostics.emplace_back("edge_space_lower_dim",
                                  static_cast<double>(edge_rep.eps_records.front().lower_dim));
      lr.diagnostics.emplace_back("group_upper_dim",
                                  static_cast<double>(group_rep.eps_records.front().upper_dim));
      lr.diagnostics.emplace_back("group_pass_fraction", group_rep.pass_fraction);
      for (const auto& item : graph_evidence) lr.diagnostics.push_back(item);
      lr.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      rung.levels.push_back(std::move(lr));
    }
    rep.rungs.push_back(std::move(rung));
  }
  finalize_report(rep);
  return rep;
}

}  // namespace soficlab
