#include "soficlab/pnorm.hpp"

#include <cmath>
#include <stdexcept>

#include "soficlab/rng.hpp"

namespace soficlab {
namespace {

void check_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm exponent must satisfy p >= 1");
}

double real_lp(const Eigen::VectorXd& v, double p) {
  if (v.size() == 0) return 0.0;
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  if (p == 1.0) return v.cwiseAbs().sum();
  if (p == 2.0) return v.norm();
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

void check_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary action: matrix must be square");
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  const double err =
      (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-10) {
    throw std::invalid_argument("unitary action: matrix fails unitarity check (defect " +
                                std::to_string(err) + ")");
  }
}

double max_column_l1(const Eigen::MatrixXcd& t) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < t.cols(); ++j) best = std::max(best, t.col(j).cwiseAbs().sum());
  return best;
}

double max_row_l1(const Eigen::MatrixXcd& t) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < t.rows(); ++i) best = std::max(best, t.row(i).cwiseAbs().sum());
  return best;
}

double top_singular_value(const Eigen::MatrixXcd& t) {
  const Eigen::VectorXd sv = singular_values(t);
  return sv.size() == 0 ? 0.0 : sv(0);
}

// Entrywise |y_i|^e * phase(y_i); the duality map between l^p spaces up to
// normalization.
Eigen::VectorXcd phase_power(const Eigen::VectorXcd& y, double e) {
  Eigen::VectorXcd out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double a = std::abs(y[i]);
    out[i] = a == 0.0 ? std::complex<double>(0.0) : y[i] / a * std::pow(a, e);
  }
  return out;
}

// Random complex vector with entries on the unit circle, generated by
// rejection sampling in the disk (no libm transcendentals, bit-exact).
Eigen::VectorXcd random_phase_vector(Eigen::Index n, SplitMix64& gen) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = 0.0, y = 0.0, r2 = 0.0;
    do {
      x = 2.0 * gen.next_double() - 1.0;
      y = 2.0 * gen.next_double() - 1.0;
      r2 = x * x + y * y;
    } while (r2 > 1.0 || r2 < 1e-12);
    const double r = std::sqrt(r2);
    v[i] = std::complex<double>(x / r, y / r);
  }
  return v;
}

// Dual-scaling power iterations: every iterate yields the valid lower bound
// ||T x||_p / ||x||_p, so the maximum over iterates and starts is certified
// regardless of convergence.
double lp_lower_probe(const Eigen::MatrixXcd& t, double p, int rounds, std::uint64_t seed) {
  const double pdual = p / (p - 1.0);
  double best = 0.0;
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    Eigen::VectorXcd ej = Eigen::VectorXcd::Zero(t.cols());
    ej[j] = 1.0;
    best = std::max(best, lp_norm(t * ej, p));
  }
  SplitMix64 gen(seed);
  for (int r = 0; r < rounds; ++r) {
    Eigen::VectorXcd x = r == 0 ? Eigen::VectorXcd::Ones(t.cols()).eval()
                                : random_phase_vector(t.cols(), gen);
    for (int it = 0; it < 25; ++it) {
      const double xn = lp_norm(x, p);
      if (xn == 0.0) break;
      x /= xn;
      const Eigen::VectorXcd y = t * x;
      best = std::max(best, lp_norm(y, p));
      const Eigen::VectorXcd w = t.adjoint() * phase_power(y, p - 1.0);
      x = phase_power(w, pdual - 1.0);
      if (lp_norm(x, p) == 0.0) break;
    }
  }
  return best;
}

NormBracket finish_bracket(double lower, double upper, std::string method) {
  if (lower > upper * (1.0 + 1e-9) + 1e-12) {
    throw std::logic_error("operator norm bracket inverted: lower " + std::to_string(lower) +
                           " > upper " + std::to_string(upper));
  }
  return {std::min(lower, upper), upper, std::move(method)};
}

}  // namespace

double lp_norm(const Eigen::VectorXcd& v, double p) {
  check_exponent(p);
  return real_lp(v.cwiseAbs(), p);
}

double schatten_norm(const Eigen::MatrixXcd& m, double p) {
  check_exponent(p);
  return real_lp(singular_values(m), p);
}

Eigen::VectorXcd permutation_action(const Permutation& sigma, const Eigen::VectorXcd& v) {
  if (static_cast<Eigen::Index>(sigma.degree()) != v.size()) {
    throw std::invalid_argument("permutation_action: dimension mismatch");
  }
  Eigen::VectorXcd out(v.size());
  for (std::uint32_t i = 0; i < sigma.degree(); ++i) out[sigma(i)] = v[i];
  return out;
}

Eigen::MatrixXcd permutation_matrix(const Permutation& sigma) {
  const auto d = static_cast<Eigen::Index>(sigma.degree());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (std::uint32_t i = 0; i < sigma.degree(); ++i) m(sigma(i), i) = 1.0;
  return m;
}

Eigen::MatrixXcd schatten_conjugate(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& a) {
  check_unitary(u);
  if (a.rows() != u.rows() || a.cols() != u.rows()) {
    throw std::invalid_argument("schatten_conjugate: dimension mismatch");
  }
  return u * a * u.adjoint();
}

Eigen::MatrixXcd schatten_left_multiply(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& a) {
  check_unitary(u);
  if (a.rows() != u.cols()) throw std::invalid_argument("schatten_left_multiply: dimension mismatch");
  return u * a;
}

double ProductNormSpec::weight(int j) const {
  if (j < 1) throw std::invalid_argument("product norm blocks are 1-based");
  return std::ldexp(1.0, leading_weight_one ? -(j - 1) : -j);
}

double product_norm(const ProductNormSpec& spec, const std::vector<double>& block_norms) {
  if (!(spec.q >= 1.0) || std::isinf(spec.q)) {
    throw std::invalid_argument("product norm exponent must be finite and >= 1");
  }
  std::size_t count = block_norms.size();
  if (spec.truncate_at > 0) count = std::min<std::size_t>(count, static_cast<std::size_t>(spec.truncate_at));
  double acc = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double f = block_norms[j];
    if (f < 0.0) throw std::invalid_argument("product norm blocks must be nonnegative");
    acc += spec.weight(static_cast<int>(j) + 1) * std::pow(f, spec.q);
  }
  return std::pow(acc, 1.0 / spec.q);
}

NormBracket operator_pnorm(const Eigen::MatrixXcd& t, double p_in, double p_out, int probe_rounds,
                           std::uint64_t probe_seed) {
  check_exponent(p_in);
  check_exponent(p_out);
  if (p_in != p_out) {
    throw std::invalid_argument("operator_pnorm: mixed domain/codomain exponents unsupported");
  }
  const double p = p_in;
  if (t.rows() == 0 || t.cols() == 0) return {0.0, 0.0, "empty"};
  if (p == 1.0) {
    const double v = max_column_l1(t);
    return {v, v, "exact-column-sums"};
  }
  if (std::isinf(p)) {
    const double v = max_row_l1(t);
    return {v, v, "exact-row-sums"};
  }
  if (p == 2.0) {
    const double v = top_singular_value(t);
    return {v, v, "exact-svd"};
  }
  const double lower = lp_lower_probe(t, p, probe_rounds, probe_seed);
  double upper = 0.0;
  if (p < 2.0) {
    const double theta = 2.0 / p - 1.0;  // 1/p = theta/1 + (1-theta)/2
    upper = std::pow(max_column_l1(t), theta) * std::pow(top_singular_value(t), 1.0 - theta);
  } else {
    const double theta = 1.0 - 2.0 / p;  // 1/p = (1-theta)/2
    upper = std::pow(top_singular_value(t), 2.0 / p) * std::pow(max_row_l1(t), theta);
  }
  return finish_bracket(lower, upper, "probe+interpolation");
}

Eigen::VectorXcd flatten(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

NormBracket schatten_map_norm_bracket(const std::vector<Eigen::MatrixXcd>& columns, double p,
                                      int probe_rounds, std::uint64_t probe_seed) {
  check_exponent(p);
  if (columns.empty()) return {0.0, 0.0, "empty"};
  const Eigen::Index rows = columns.front().rows();
  const Eigen::Index cols = columns.front().cols();
  for (const auto& m : columns) {
    if (m.rows() != rows || m.cols() != cols) {
      throw std::invalid_argument("schatten_map_norm_bracket: inconsistent matrix shapes");
    }
  }
  if (p > 2.0) {
    throw std::invalid_argument("schatten_map_norm_bracket: exponents above 2 unsupported");
  }

  const auto s1_norm = [&]() {
    double best = 0.0;
    for (const auto& m : columns) best = std::max(best, schatten_norm(m, 1.0));
    return best;
  };
  const auto s2_norm = [&]() {
    Eigen::MatrixXcd flat(rows * cols, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) flat.col(static_cast<Eigen::Index>(j)) = flatten(columns[j]);
    return top_singular_value(flat);
  };

  if (p == 1.0) {
    const double v = s1_norm();
    return {v, v, "exact-max-column"};
  }
  if (p == 2.0) {
    const double v = s2_norm();
    return {v, v, "flatten-svd"};
  }

  // 1 < p < 2: dual-scaling probes below, S^1/S^2 interpolation above.
  const double pdual = p / (p - 1.0);
  const auto apply = [&](const Eigen::VectorXcd& c) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rows, cols);
    for (std::size_t j = 0; j < columns.size(); ++j) acc += c[static_cast<Eigen::Index>(j)] * columns[j];
    return acc;
  };
  double lower = 0.0;
  for (const auto& m : columns) lower = std::max(lower, schatten_norm(m, p));
  SplitMix64 gen(probe_seed);
  const auto k = static_cast<Eigen::Index>(columns.size());
  for (int r = 0; r < probe_rounds; ++r) {
    Eigen::VectorXcd c = r == 0 ? Eigen::VectorXcd::Ones(k).eval() : random_phase_vector(k, gen);
    for (int it = 0; it < 15; ++it) {
      const double cn = lp_norm(c, p);
      if (cn == 0.0) break;
      c /= cn;
      const Eigen::MatrixXcd y = apply(c);
      lower = std::max(lower, schatten_norm(y, p));
      // Schatten duality map: U diag(s^{p-1}) V^* for y = U diag(s) V^*.
      Eigen::BDCSVD<Eigen::MatrixXcd> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
      Eigen::VectorXd s = svd.singularValues();
      for (Eigen::Index i = 0; i < s.size(); ++i) s[i] = std::pow(s[i], p - 1.0);
      const Eigen::MatrixXcd z = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
      Eigen::VectorXcd w(k);
      for (Eigen::Index j = 0; j < k; ++j) {
        w[j] = (columns[static_cast<std::size_t>(j)].adjoint() * z).trace();
      }
      c = phase_power(w, pdual - 1.0);
    }
  }
  const double theta = 2.0 / p - 1.0;
  const double upper = std::pow(s1_norm(), theta) * std::pow(s2_norm(), 1.0 - theta);
  return finish_bracket(lower, upper, "schatten-probe+interpolation");
}

}  // namespace soficlab
