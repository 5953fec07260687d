#include <chrono>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "soficlab/lab.hpp"
#include "soficlab/pnorm.hpp"

namespace soficlab {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// Character-isotypic averaging for the cyclic generator image sigma:
//   Q_t = (1/k) sum_{s=0}^{k-1} omega^{t s} P_{sigma^s},  omega = e^{2 pi i/k}.
// When sigma has exact order k this is a Hermitian idempotent whose rank is
// the multiplicity of the eigenvalue omega^{-t} of sigma.
Eigen::MatrixXcd isotypic_projection(const Permutation& sigma, int k, long long t) {
  const auto d = static_cast<Eigen::Index>(sigma.degree());
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(d, d);
  const double tau = 2.0 * M_PI / static_cast<double>(k);
  Permutation power = Permutation::identity(sigma.degree());
  for (int s = 0; s < k; ++s) {
    const std::complex<double> phase = std::polar(1.0 / static_cast<double>(k),
                                                  tau * static_cast<double>(t) * s);
    for (std::uint32_t x = 0; x < sigma.degree(); ++x) {
      q(static_cast<Eigen::Index>(power(x)), static_cast<Eigen::Index>(x)) += phase;
    }
    power = sigma.compose(power);
  }
  return q;
}

struct CharacterRank {
  int numeric_rank = 0;
  long long formula_rank = 0;
  double idempotency_gap = 0.0;
  double trace_gap = 0.0;
  bool consistent = false;
};

CharacterRank character_rank(const Permutation& sigma, int k, long long t, std::uint32_t degree) {
  CharacterRank out;
  const Eigen::MatrixXcd q = isotypic_projection(sigma, k, t);
  out.idempotency_gap = (q * q - q).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()[i] > 0.5) ++out.numeric_rank;
  }
  out.trace_gap = std::abs(q.trace().real() - static_cast<double>(out.numeric_rank));

  // Independent counting route: floor(d/k) full cycles each contribute one
  // omega^{-t} eigenvector; the d mod k fixed points contribute only to the
  // trivial character.
  const long long cycles = degree / static_cast<std::uint32_t>(k);
  const long long fixed = degree % static_cast<std::uint32_t>(k);
  const bool trivial = ((t % k) + k) % k == 0;
  out.formula_rank = cycles + (trivial ? fixed : 0);

  out.consistent = out.idempotency_gap <= 1e-10 && out.trace_gap <= 1e-8 &&
                   out.numeric_rank == out.formula_rank;
  return out;
}

}  // namespace

DimensionReport run_finite_group(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.action != Action::FiniteGroupRep) {
    throw ConfigError("run_finite_group: action must be finite-group-rep");
  }
  const int k = cfg.group.param;

  DimensionReport rep;
  rep.config = cfg;
  RungReport rung;
  rung.delta = cfg.delta;
  rung.eps = cfg.eps;

  for (std::uint32_t value : cfg.levels) {
    const auto start = std::chrono::steady_clock::now();
    const SoficLevel level = build_level(cfg, value);
    const Permutation& sigma = level.gen_images.front();

    LevelReport lr;
    lr.degree = level.degree;
    long long fixed_dim = 0;
    long long fixed_dim_formula = 0;
    for (long long t : cfg.characters) {
      const CharacterRank cr = character_rank(sigma, k, t, level.degree);
      ++lr.witness_total;
      if (cr.consistent) ++lr.witness_passed;
      lr.max_defect = std::max(lr.max_defect, cr.idempotency_gap);
      fixed_dim += cr.numeric_rank;
      fixed_dim_formula += cr.formula_rank;
      lr.diagnostics.emplace_back("character_" + std::to_string(t) + "_rank",
                                  static_cast<double>(cr.numeric_rank));
      lr.diagnostics.emplace_back("character_" + std::to_string(t) + "_trace_gap", cr.trace_gap);
    }
    lr.pass_fraction = lr.witness_total == 0 ? 0.0
                                             : static_cast<double>(lr.witness_passed) /
                                                   static_cast<double>(lr.witness_total);
    lr.diagnostics.emplace_back("fixed_dim_numeric", static_cast<double>(fixed_dim));
    lr.diagnostics.emplace_back("fixed_dim_formula", static_cast<double>(fixed_dim_formula));

    for (double eps : cfg.eps) {
      EpsRecord rec;
      rec.epsilon = eps;
      rec.lower_dim = fixed_dim;
      rec.upper_dim = fixed_dim;
      rec.lower_method = "equivariant-rank";
      rec.normalized = normalize_bracket(static_cast<int>(fixed_dim),
                                         static_cast<int>(fixed_dim), level.degree);
      lr.eps_records.push_back(std::move(rec));
    }
    lr.wall_ms = elapsed_ms(start);
    rung.levels.push_back(std::move(lr));
  }
  rep.rungs.push_back(std::move(rung));
  finalize_report(rep);
  return rep;
}

}  // namespace soficlab
