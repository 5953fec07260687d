#pragma once
// Experiment pipelines: each run_* function turns a validated config into a
// DimensionReport. Pipelines are single-threaded and deterministic: each
// level draws randomness only from a stream split off the config seed by
// the level degree, so adding or removing levels never perturbs the others.
//
// Bracket conventions shared by the witness pipelines (regular-lp,
// schatten-regular, betti):
//  * lower bounds come from the passing witnesses' generator-image family
//    via the frame-trace argument, computed in the weighted flattened
//    coordinates of the product norm;
//  * the reported upper bound is structural — the image of every map out of
//    the span lies in (generator limit) x (model dimension) coordinates —
//    while the sample subspace sweep over the witnesses alone is emitted as
//    a diagnostic, never as the bound (witnesses certify only one side);
//  * the refinement ladder re-runs every level at (delta, eps) / 2^r.
//
// z-rotation re-derives its chain length from delta, so finer rungs would
// demand levels larger than the configured ones; it reports the configured
// rung only. finite-group-rep is an exact rank computation with no
// (delta, eps) dependence and likewise reports a single rung.

#include <cstdint>
#include <vector>

#include "soficlab/config.hpp"
#include "soficlab/homspace.hpp"
#include "soficlab/report.hpp"
#include "soficlab/sofic.hpp"

namespace soficlab {

DimensionReport run_lp_dimension(const ExperimentConfig& cfg);
DimensionReport run_finite_group(const ExperimentConfig& cfg);
DimensionReport run_z_upper_bound(const ExperimentConfig& cfg);
DimensionReport run_betti(const ExperimentConfig& cfg);
DimensionReport run_schatten(const ExperimentConfig& cfg);

// Dispatch on cfg.action.
DimensionReport run_experiment(const ExperimentConfig& cfg);

// Defect statistics of the configured levels on seeded word pairs; CSV
// dimension fields are zeroed and pass_fraction counts the pairs whose
// multiplicativity defect stays below delta.
DimensionReport run_sofic_check(const ExperimentConfig& cfg);

// --- shared building blocks (exposed for the pipelines and their tests) ---

// Stage word set F: the f_radius ball, or {e, a_1, ..., a_n} when
// f_positive is set.
std::vector<GroupWord> stage_words(const ExperimentConfig& cfg);

// Level construction per cfg.construction. For integers2 the level value is
// the grid side, so the degree is its square.
SoficLevel build_level(const ExperimentConfig& cfg, std::uint32_t level_value);

// Seed stream for one level: SplitMix64(cfg.seed).split(degree).
std::uint64_t level_seed(const ExperimentConfig& cfg, std::uint32_t level_value);

// Scores every witness of the level's coordinate family (or the Schatten
// basis-pair family) against (C = 1, delta), flattens the passing
// generator-image sequences through the product norm weights, and produces
// the per-eps bracket records. `ambient` is d for vector models, d^2 for
// matrix models; the structural upper bound is generator_limit * ambient.
LevelReport witness_level_report(const ExperimentConfig& cfg, const SoficLevel& level,
                                 const LocalSpan& span, const std::vector<GroupWord>& f_words,
                                 double delta, const std::vector<double>& eps_list, bool schatten);

}  // namespace soficlab
