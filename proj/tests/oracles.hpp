#pragma once
// Brute-force reference for the epsilon-dimension of tiny families (p = 2).
//
// For every subset S of the family and every r up to |S|, the top-r left
// singular subspace of the matrix with columns S is a candidate; a candidate
// of dimension r is feasible when every family member (not just S) sits
// strictly within eps of it. The returned value is the smallest feasible
// candidate dimension — a certified upper bound on the true
// epsilon-dimension that the production bracket must contain. Exhaustive
// over subsets, so only usable for |family| <= ~12 and small ambient
// dimension.

#include <vector>

#include <Eigen/Dense>

namespace soficlab_test {

inline double residual_to_columns(const Eigen::VectorXcd& a, const Eigen::MatrixXcd& basis) {
  if (basis.cols() == 0) return a.norm();
  return (a - basis * (basis.adjoint() * a)).norm();
}

inline int brute_force_eps_dim_upper(const std::vector<Eigen::VectorXcd>& family, double eps) {
  const int k = static_cast<int>(family.size());
  if (k == 0) return 0;
  const int ambient = static_cast<int>(family.front().size());
  int best = ambient;  // the whole space always works

  const auto feasible = [&](const Eigen::MatrixXcd& basis) {
    for (const auto& a : family) {
      if (!(residual_to_columns(a, basis) < eps)) return false;
    }
    return true;
  };

  if (feasible(Eigen::MatrixXcd(ambient, 0))) return 0;

  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    Eigen::MatrixXcd cols(ambient, 0);
    for (int j = 0; j < k; ++j) {
      if (mask & (1u << j)) {
        cols.conservativeResize(ambient, cols.cols() + 1);
        cols.col(cols.cols() - 1) = family[static_cast<std::size_t>(j)];
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
      if (sv(i) > 1e-12 * sv(0)) ++rank;
    }
    for (int r = 1; r <= rank && r < best; ++r) {
      if (feasible(svd.matrixU().leftCols(r))) {
        best = r;
        break;  // larger r for this subset cannot improve on `best`
      }
    }
  }
  return best;
}

}  // namespace soficlab_test
