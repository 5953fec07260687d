#include "soficlab/epsdim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "soficlab/pnorm.hpp"

namespace soficlab {
namespace {

Eigen::MatrixXcd stack_columns(const std::vector<Eigen::VectorXcd>& family) {
  if (family.empty()) return {};
  const Eigen::Index n = family.front().size();
  Eigen::MatrixXcd m(n, static_cast<Eigen::Index>(family.size()));
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (family[j].size() != n) throw std::invalid_argument("family vectors have mixed dimensions");
    m.col(static_cast<Eigen::Index>(j)) = family[j];
  }
  return m;
}

// Minimal r such that the top-r eigenvalue sum of the subfamily's frame
// operator reaches sum ||a||^2 - k eps^2. Conservative tolerance keeps the
// bound sound under rounding. Eigenvalues of the Gram matrix equal those of
// the frame operator, so the k x k Gram suffices.
int trace_bound_for(const Eigen::MatrixXcd& gram, double eps) {
  const auto k = static_cast<int>(gram.rows());
  if (k == 0) return 0;
  const double total = gram.trace().real();
  const double target = total - static_cast<double>(k) * eps * eps;
  if (target <= 0.0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();  // ascending
  const double tol = 1e-9 * std::max(1.0, total);
  double acc = 0.0;
  for (int r = 1; r <= k; ++r) {
    acc += std::max(0.0, ev[k - r]);
    if (acc >= target - tol) return r;
  }
  return k;
}

Eigen::MatrixXcd gram_of(const Eigen::MatrixXcd& cols) { return cols.adjoint() * cols; }

}  // namespace

int projected_trace_bound(double trace_value, int k, double eps) {
  if (k < 0 || eps < 0.0) throw std::invalid_argument("projected_trace_bound: bad arguments");
  const double value = trace_value - static_cast<double>(k) * eps;
  if (value <= 0.0) return 0;
  return static_cast<int>(std::ceil(value - 1e-12));
}

double packing_lower_bound(double eps, double alpha) {
  if (!(eps > 0.0)) throw std::invalid_argument("packing_lower_bound: eps must be positive");
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("packing_lower_bound: alpha must be positive");
  }
  const double numer = std::log(alpha) - std::log(4.0) - std::log(2.0 + 4.0 * eps);
  const double denom = std::log(eps / (2.0 + 4.0 * eps));
  const double kappa = 1.0 - numer / denom;
  return std::clamp(kappa, 0.0, 1.0);
}

int eps_dim_lower_trace(const std::vector<Eigen::VectorXcd>& family, double eps,
                        std::string* method_out) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps_dim_lower_trace: eps must be positive");
  if (family.empty()) {
    if (method_out) *method_out = "empty";
    return 0;
  }
  const Eigen::MatrixXcd cols = stack_columns(family);
  const auto k = static_cast<int>(cols.cols());

  int best = 0;
  std::string best_name = "frame-trace:full";
  best = trace_bound_for(gram_of(cols), eps);

  // Norm-thresholded subfamily: members with ||a||^2 <= eps^2 contribute
  // nothing to the target but still count toward the -k eps^2 penalty.
  {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
      if (cols.col(j).squaredNorm() > eps * eps) keep.push_back(j);
    }
    if (!keep.empty() && static_cast<int>(keep.size()) < k) {
      Eigen::MatrixXcd sub(cols.rows(), static_cast<Eigen::Index>(keep.size()));
      for (std::size_t i = 0; i < keep.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = cols.col(keep[i]);
      const int bound = trace_bound_for(gram_of(sub), eps);
      if (bound > best) {
        best = bound;
        best_name = "frame-trace:thresholded";
      }
    }
  }

  // Pivoted near-independent subfamily: greedy Gram-Schmidt in decreasing
  // norm order, dropping members that are numerically dependent on the kept
  // ones. Counters dilution from heavily repeated directions.
  {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(cols.cols()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return cols.col(a).squaredNorm() > cols.col(b).squaredNorm();
    });
    Eigen::MatrixXcd basis(cols.rows(), cols.cols());
    std::vector<Eigen::Index> kept;
    Eigen::Index nb = 0;
    for (Eigen::Index idx : order) {
      Eigen::VectorXcd v = cols.col(idx);
      if (nb > 0) v -= basis.leftCols(nb) * (basis.leftCols(nb).adjoint() * v);
      if (v.norm() > 1e-8) {
        basis.col(nb++) = v / v.norm();
        kept.push_back(idx);
      }
    }
    if (!kept.empty() && static_cast<int>(kept.size()) < k) {
      Eigen::MatrixXcd sub(cols.rows(), static_cast<Eigen::Index>(kept.size()));
      for (std::size_t i = 0; i < kept.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = cols.col(kept[i]);
      const int bound = trace_bound_for(gram_of(sub), eps);
      if (bound > best) {
        best = bound;
        best_name = "frame-trace:pivoted";
      }
    }
  }

  if (method_out) *method_out = best_name;
  return best;
}

double subspace_distance_upper(const Eigen::VectorXcd& a, const Eigen::MatrixXcd& basis, double p) {
  if (basis.cols() == 0) return lp_norm(a, p);
  // l^2-optimal coefficients as the starting point (exact answer at p = 2).
  Eigen::VectorXcd c = basis.completeOrthogonalDecomposition().solve(a);
  double best = lp_norm(a - basis * c, p);
  if (p == 2.0) return best;
  // IRLS polish: reweighted least squares on |r_i|^{p-2}; every iterate is a
  // feasible coefficient vector, so `best` stays a certified upper bound.
  for (int it = 0; it < 30; ++it) {
    const Eigen::VectorXcd r = a - basis * c;
    Eigen::VectorXd w(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      w[i] = std::pow(std::max(std::abs(r[i]), 1e-10), (p - 2.0) / 2.0);
    }
    const Eigen::MatrixXcd wb = w.asDiagonal() * basis;
    const Eigen::VectorXcd wa = w.asDiagonal() * a;
    const Eigen::VectorXcd next = wb.completeOrthogonalDecomposition().solve(wa);
    const double val = lp_norm(a - basis * next, p);
    if (val < best) {
      best = val;
      c = next;
    } else {
      break;
    }
  }
  return best;
}

int eps_dim_upper(const std::vector<Eigen::VectorXcd>& family, double eps, double p,
                  Eigen::MatrixXcd* witness_out) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps_dim_upper: eps must be positive");
  if (family.empty()) {
    if (witness_out) witness_out->resize(0, 0);
    return 0;
  }
  const Eigen::MatrixXcd cols = stack_columns(family);

  if (p == 2.0) {
    // PCA sweep: residual of a_j past the top-r left singular vectors is
    // read off the rotated coordinates, so one SVD covers every rank.
    // residual_j(r)^2 = tail_j + sum_{i >= r} |rotated_ij|^2, accumulated as
    // suffix sums from the bottom row up.
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(cols, Eigen::ComputeThinU);
    const Eigen::MatrixXcd rotated = svd.matrixU().adjoint() * cols;  // rank x k
    const Eigen::Index rank = rotated.rows();
    Eigen::VectorXd tail = Eigen::VectorXd::Zero(cols.cols());
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
      tail[j] = std::max(cols.col(j).squaredNorm() - rotated.col(j).squaredNorm(), 0.0);
    }
    const Eigen::MatrixXd sq = rotated.cwiseAbs2();
    std::vector<Eigen::VectorXd> suffix(static_cast<std::size_t>(rank) + 1);
    suffix[static_cast<std::size_t>(rank)] = tail;
    for (Eigen::Index r = rank - 1; r >= 0; --r) {
      suffix[static_cast<std::size_t>(r)] =
          suffix[static_cast<std::size_t>(r) + 1] + sq.row(r).transpose();
    }
    for (Eigen::Index r = 0; r <= rank; ++r) {
      const double worst = suffix[static_cast<std::size_t>(r)].size() > 0
                               ? suffix[static_cast<std::size_t>(r)].maxCoeff()
                               : 0.0;
      if (std::sqrt(worst) < eps) {
        if (witness_out) *witness_out = svd.matrixU().leftCols(r);
        return static_cast<int>(r);
      }
    }
    if (witness_out) *witness_out = svd.matrixU();
    return static_cast<int>(rank);
  }

  // p != 2: greedy residual selection. Add the worst-approximated family
  // member to the basis until every residual drops below eps.
  Eigen::MatrixXcd basis(cols.rows(), 0);
  for (int round = 0; round <= static_cast<int>(cols.cols()); ++round) {
    double worst = 0.0;
    Eigen::Index worst_j = -1;
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
      const double dist = subspace_distance_upper(cols.col(j), basis, p);
      if (dist > worst) {
        worst = dist;
        worst_j = j;
      }
    }
    if (worst < eps) {
      if (witness_out) *witness_out = basis;
      return static_cast<int>(basis.cols());
    }
    // Orthonormalize for numerical stability; the span is unchanged.
    Eigen::VectorXcd v = cols.col(worst_j);
    if (basis.cols() > 0) v -= basis * (basis.adjoint() * v);
    if (v.norm() < 1e-13) break;  // numerically dependent; cannot improve
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = v / v.norm();
  }
  if (witness_out) *witness_out = basis;
  return static_cast<int>(basis.cols());
}

double family_residual(const std::vector<Eigen::VectorXcd>& family, const Eigen::MatrixXcd& witness,
                       double p) {
  double worst = 0.0;
  for (const auto& a : family) worst = std::max(worst, subspace_distance_upper(a, witness, p));
  return worst;
}

int eps_dim_lower_for_p(const std::vector<Eigen::VectorXcd>& family, double eps, double p,
                        std::string* method_out) {
  if (!(p >= 1.0)) throw std::invalid_argument("eps_dim_lower_for_p: p must be >= 1");
  double eps_for_lower = eps;
  std::string transfer;
  if (p > 2.0 && !family.empty()) {
    // ||x||_2 <= n^(1/2 - 1/p) ||x||_p on n coordinates.
    const double n = static_cast<double>(family.front().size());
    eps_for_lower = eps * std::pow(n, 0.5 - 1.0 / p);
    transfer = "+transfer";
  }
  std::string method;
  const int lower = eps_dim_lower_trace(family, eps_for_lower, &method);
  if (method_out) *method_out = method + transfer;
  return lower;
}

EpsDimBracket eps_dim_bracket(const std::vector<Eigen::VectorXcd>& family, double eps, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("eps_dim_bracket: p must be >= 1");
  EpsDimBracket out;
  out.upper = eps_dim_upper(family, eps, p);
  out.upper_method = (p == 2.0) ? "pca-sweep" : "greedy-irls";
  out.lower = eps_dim_lower_for_p(family, eps, p, &out.lower_method);
  // Rounding near the target can flip a marginal eigenvalue; the certified
  // direction is downward, so resolve ties toward the upper bound.
  out.lower = std::min(out.lower, out.upper);
  return out;
}

namespace {
long long gcd_ll(long long a, long long b) {
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

std::string fraction_string(long long num, long long den) {
  const long long g = std::max(1LL, gcd_ll(num, den));
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}
}  // namespace

NormalizedBracket normalize_bracket(int lower_dim, int upper_dim, long long ambient) {
  if (ambient <= 0) throw std::invalid_argument("normalize_bracket: ambient must be positive");
  NormalizedBracket nb;
  nb.lower_num = lower_dim;
  nb.upper_num = upper_dim;
  nb.denom = ambient;
  nb.lower_value = static_cast<double>(lower_dim) / static_cast<double>(ambient);
  nb.upper_value = static_cast<double>(upper_dim) / static_cast<double>(ambient);
  nb.lower_fraction = fraction_string(lower_dim, ambient);
  nb.upper_fraction = fraction_string(upper_dim, ambient);
  return nb;
}

}  // namespace soficlab
