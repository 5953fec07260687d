#include <algorithm>

#include "soficlab/lab.hpp"

namespace soficlab {

// Schatten-model run: the witness family is the full basis-pair family
// T_{a,b} (images are the rank-one matrix units translated by the level),
// the model space is S^p(d) of dimension d^2, and the generator-image
// family of the passing witnesses feeds the same frame-trace bound as the
// vector pipeline — matrix images are flattened, which is isometric on S^2
// and norm-dominating for 1 <= p <= 2.
DimensionReport run_schatten(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.action != Action::SchattenRegular) {
    throw ConfigError("run_schatten: action must be schatten-regular");
  }

  DimensionReport rep;
  rep.config = cfg;

  const GeneratingSequence seq{cfg.group, cfg.multiplicity,
                               std::max(cfg.m, cfg.multiplicity)};
  const std::vector<GroupWord> f = stage_words(cfg);
  const LocalSpan span = build_span(seq, f, cfg.m, cfg.capacity);

  std::vector<SoficLevel> levels;
  levels.reserve(cfg.levels.size());
  for (std::uint32_t value : cfg.levels) levels.push_back(build_level(cfg, value));

  for (int r = 0; r < cfg.rungs; ++r) {
    RungReport rung;
    rung.delta = cfg.delta / (1 << r);
    for (double e : cfg.eps) rung.eps.push_back(e / (1 << r));
    for (const auto& level : levels) {
      rung.levels.push_back(
          witness_level_report(cfg, level, span, f, rung.delta, rung.eps, true));
    }
    rep.rungs.push_back(std::move(rung));
  }
  finalize_report(rep);
  return rep;
}

}  // namespace soficlab
