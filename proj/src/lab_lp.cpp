#include "soficlab/lab.hpp"

#include <chrono>
#include <cmath>

#include "soficlab/epsdim.hpp"
#include "soficlab/pnorm.hpp"
#include "soficlab/rng.hpp"

namespace soficlab {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

int checked_pow2(int base_rung) { return 1 << base_rung; }

SoficLevel integers2_grid(std::uint32_t side, std::size_t cap) {
  const std::uint64_t degree64 = static_cast<std::uint64_t>(side) * side;
  if (degree64 > cap) {
    throw CapacityError("build_level: integers2 grid exceeds capacity");
  }
  const auto degree = static_cast<std::uint32_t>(degree64);
  // Point (x, y) is x + side * y; the generators shift x and y by one.
  std::vector<std::uint32_t> shift_x(degree);
  std::vector<std::uint32_t> shift_y(degree);
  for (std::uint32_t y = 0; y < side; ++y) {
    for (std::uint32_t x = 0; x < side; ++x) {
      const std::uint32_t at = x + side * y;
      shift_x[at] = ((x + 1) % side) + side * y;
      shift_y[at] = x + side * ((y + 1) % side);
    }
  }
  SoficLevel level;
  level.group = GroupDescriptor::integers_squared();
  level.degree = degree;
  level.gen_images.emplace_back(std::move(shift_x));
  level.gen_images.emplace_back(std::move(shift_y));
  return level;
}

SoficLevel base_level(const ExperimentConfig& cfg, Construction how, std::uint32_t value) {
  switch (how) {
    case Construction::Random: {
      const std::uint64_t seed = level_seed(cfg, value);
      if (cfg.group.kind == GroupKind::Free) {
        return random_free(cfg.group.param, value, seed);
      }
      SplitMix64 gen(seed);
      SoficLevel level;
      level.group = GroupDescriptor::integers();
      level.degree = value;
      level.gen_images.emplace_back(random_permutation_images(value, gen));
      return level;
    }
    case Construction::Folner:
      if (cfg.group.kind == GroupKind::Integers2) return integers2_grid(value, cfg.capacity);
      return folner_cyclic(value);
    case Construction::Block:
      return finite_block(cfg.group.param, value);
    case Construction::Tensor:
      break;
  }
  throw ConfigError("build_level: unsupported construction");
}

Construction tensor_base_for(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupKind::Free:
      return Construction::Random;
    case GroupKind::Integers:
      return Construction::Folner;
    case GroupKind::Cyclic:
      return Construction::Block;
    case GroupKind::Integers2:
      break;
  }
  throw ConfigError("build_level: tensor construction is not defined for this group");
}

}  // namespace

std::uint64_t level_seed(const ExperimentConfig& cfg, std::uint32_t level_value) {
  return SplitMix64(cfg.seed).split(level_value).next_u64();
}

std::vector<GroupWord> stage_words(const ExperimentConfig& cfg) {
  if (cfg.f_positive) {
    std::vector<GroupWord> f;
    f.push_back(identity_word(cfg.group));
    for (auto& g : standard_generators(cfg.group)) f.push_back(std::move(g));
    return f;
  }
  return ball(cfg.group, standard_generators(cfg.group), cfg.f_radius, cfg.capacity);
}

SoficLevel build_level(const ExperimentConfig& cfg, std::uint32_t level_value) {
  if (level_value == 0) throw ConfigError("build_level: level degree must be >= 1");
  if (static_cast<std::size_t>(level_value) > cfg.capacity) {
    throw CapacityError("build_level: level degree exceeds capacity");
  }
  if (cfg.construction == Construction::Tensor) {
    const SoficLevel base = base_level(cfg, tensor_base_for(cfg.group), level_value);
    return tensor_power(base, cfg.tensor_k, cfg.capacity);
  }
  return base_level(cfg, cfg.construction, level_value);
}

LevelReport witness_level_report(const ExperimentConfig& cfg, const SoficLevel& level,
                                 const LocalSpan& span, const std::vector<GroupWord>& f_words,
                                 double delta, const std::vector<double>& eps_list,
                                 bool schatten) {
  const auto start = std::chrono::steady_clock::now();
  LevelReport rep;
  rep.degree = level.degree;

  const double p = cfg.p;
  const double q = effective_rho_q(cfg);
  ProductNormSpec rho;
  rho.q = q;
  rho.leading_weight_one = cfg.rho_leading_one;
  const int glim = span.generator_limit;
  const auto d = static_cast<Eigen::Index>(level.degree);
  const Eigen::Index block_dim = schatten ? d * d : d;
  const long long ambient = static_cast<long long>(block_dim);

  // q = p: flattening with weight^(1/p) per block turns the product norm
  // into one l^p norm exactly. Otherwise scale by weight^(1/q) and inflate
  // eps by sqrt(#blocks), a coarse but sound transfer.
  const double scale_exp = (q == p) ? p : q;
  const double eps_factor = (q == p) ? 1.0 : std::sqrt(static_cast<double>(glim));
  std::vector<double> block_scale(static_cast<std::size_t>(glim));
  for (int j = 1; j <= glim; ++j) {
    block_scale[static_cast<std::size_t>(j - 1)] = std::pow(rho.weight(j), 1.0 / scale_exp);
  }

  const std::vector<Permutation> word_perms = evaluate_span_words(level, span);
  std::vector<Eigen::VectorXcd> family;

  auto score = [&](const LinearMapMatrix& t) {
    const DefectResult res = hom_defect(t, span, f_words, cfg.m, level);
    rep.max_defect = std::max(rep.max_defect, res.defect);
    ++rep.witness_total;
    switch (classify_membership(res, 1.0, delta)) {
      case HomStatus::Pass: {
        ++rep.witness_passed;
        const std::vector<Eigen::VectorXcd> images = generator_images(t, span, glim);
        Eigen::VectorXcd flat(block_dim * glim);
        for (int j = 0; j < glim; ++j) {
          flat.segment(block_dim * j, block_dim) =
              block_scale[static_cast<std::size_t>(j)] * images[static_cast<std::size_t>(j)];
        }
        family.push_back(std::move(flat));
        break;
      }
      case HomStatus::Undetermined:
        ++rep.witness_undetermined;
        break;
      case HomStatus::Fail:
        break;
    }
  };

  if (schatten) {
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        score(witness_schatten_conjugate(level, span, word_perms, Eigen::VectorXcd::Unit(d, a),
                                         Eigen::VectorXcd::Unit(d, b), p));
      }
    }
  } else {
    for (std::uint32_t j = 0; j < level.degree; ++j) {
      for (int k = 1; k <= glim; ++k) {
        score(witness_lp(level, span, word_perms, j, k, p));
      }
    }
  }
  rep.pass_fraction = rep.witness_total == 0
                          ? 0.0
                          : static_cast<double>(rep.witness_passed) /
                                static_cast<double>(rep.witness_total);

  const long long structural_upper = static_cast<long long>(glim) * ambient;
  for (double eps : eps_list) {
    EpsRecord rec;
    rec.epsilon = eps;
    int lower = eps_dim_lower_for_p(family, eps * eps_factor, p, &rec.lower_method);
    lower = std::min<long long>(lower, structural_upper);
    rec.lower_dim = lower;
    rec.upper_dim = structural_upper;
    rec.normalized = normalize_bracket(static_cast<int>(rec.lower_dim),
                                       static_cast<int>(rec.upper_dim), ambient);
    rep.eps_records.push_back(std::move(rec));
  }

  // Witness-sample subspace sweep: a diagnostic for how much of the
  // structural coordinate space the sample already fills (p = 2 only; the
  // greedy search at other p is too slow for a side channel).
  if (p == 2.0 && !eps_list.empty()) {
    rep.diagnostics.emplace_back("sample_eps_dim_upper",
                                 static_cast<double>(eps_dim_upper(family, eps_list.front(), p)));
  }
  rep.diagnostics.emplace_back("passing_family_size", static_cast<double>(family.size()));

  rep.wall_ms = elapsed_ms(start);
  return rep;
}

DimensionReport run_lp_dimension(const ExperimentConfig& cfg) {
  validate_config(cfg);
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
    rung.delta = cfg.delta / checked_pow2(r);
    for (double e : cfg.eps) rung.eps.push_back(e / checked_pow2(r));
    for (const auto& level : levels) {
      rung.levels.push_back(
          witness_level_report(cfg, level, span, f, rung.delta, rung.eps, false));
    }
    rep.rungs.push_back(std::move(rung));
  }
  finalize_report(rep);
  return rep;
}

namespace {

GroupWord sample_word(const GroupDescriptor& g, SplitMix64& gen, std::uint32_t level_value) {
  switch (g.kind) {
    case GroupKind::Integers:
      return reduce(g, {static_cast<long long>(gen.below(std::max<std::uint32_t>(level_value, 2)))});
    case GroupKind::Integers2:
      return reduce(g, {static_cast<long long>(gen.below(std::max<std::uint32_t>(level_value, 2))),
                        static_cast<long long>(gen.below(std::max<std::uint32_t>(level_value, 2)))});
    case GroupKind::Cyclic:
      return reduce(g, {static_cast<long long>(gen.below(static_cast<std::uint32_t>(g.param)))});
    case GroupKind::Free: {
      const int len = 1 + static_cast<int>(gen.below(3));
      std::vector<long long> letters;
      long long previous = 0;
      for (int i = 0; i < len; ++i) {
        long long letter;
        do {
          const auto raw = gen.below(static_cast<std::uint32_t>(2 * g.param));
          letter = static_cast<long long>(raw) + 1;
          if (letter > g.param) letter = -(letter - g.param);
        } while (letter == -previous);
        letters.push_back(letter);
        previous = letter;
      }
      return reduce(g, std::move(letters));
    }
  }
  throw std::logic_error("sample_word: unknown group kind");
}

}  // namespace

DimensionReport run_sofic_check(const ExperimentConfig& cfg) {
  validate_config(cfg);
  constexpr int kPairs = 50;
  DimensionReport rep;
  rep.config = cfg;
  RungReport rung;
  rung.delta = cfg.delta;
  rung.eps = cfg.eps;

  for (std::uint32_t value : cfg.levels) {
    const auto start = std::chrono::steady_clock::now();
    const SoficLevel level = build_level(cfg, value);
    SplitMix64 gen(level_seed(cfg, value) ^ 0x5bd1e995u);

    std::vector<std::pair<GroupWord, GroupWord>> pairs;
    pairs.reserve(kPairs);
    for (int i = 0; i < kPairs; ++i) {
      GroupWord s = sample_word(cfg.group, gen, value);
      GroupWord t = sample_word(cfg.group, gen, value);
      for (int tries = 0; tries < 8 && t == s; ++tries) {
        t = sample_word(cfg.group, gen, value);
      }
      pairs.emplace_back(std::move(s), std::move(t));
    }
    const DefectReport defects = defect_report(level, pairs);

    LevelReport lr;
    lr.degree = level.degree;
    lr.witness_total = static_cast<long long>(defects.multiplicativity.size());
    for (const auto& stat : defects.multiplicativity) {
      if (stat.value < cfg.delta) ++lr.witness_passed;
    }
    lr.pass_fraction = lr.witness_total == 0 ? 0.0
                                             : static_cast<double>(lr.witness_passed) /
                                                   static_cast<double>(lr.witness_total);
    lr.max_defect = defects.max_multiplicativity;
    for (double eps : cfg.eps) {
      EpsRecord rec;
      rec.epsilon = eps;
      rec.lower_method = "sofic-check";
      rec.normalized = normalize_bracket(0, 0, level.degree);
      lr.eps_records.push_back(std::move(rec));
    }
    lr.diagnostics.emplace_back("min_freeness", defects.min_freeness);
    lr.diagnostics.emplace_back("freeness_pairs", static_cast<double>(defects.freeness.size()));
    lr.wall_ms = elapsed_ms(start);
    rung.levels.push_back(std::move(lr));
  }
  rep.rungs.push_back(std::move(rung));
  finalize_report(rep);
  return rep;
}

DimensionReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.action) {
    case Action::RegularLp:
      return run_lp_dimension(cfg);
    case Action::FiniteGroupRep:
      return run_finite_group(cfg);
    case Action::ZRotation:
      return run_z_upper_bound(cfg);
    case Action::Betti:
      return run_betti(cfg);
    case Action::SchattenRegular:
      return run_schatten(cfg);
  }
  throw ConfigError("run_experiment: unknown action");
}

}  // namespace soficlab
