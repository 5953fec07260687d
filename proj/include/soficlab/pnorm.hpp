#pragma once
// Norms and isometric actions on finite-dimensional coefficient spaces:
// entrywise l^p norms, Schatten p-norms via singular values, permutation
// and unitary actions, weighted product norms over block sequences, and
// certified operator-norm brackets between l^p spaces. Exponents outside
// the exactly computable set {1, 2, inf} get [lower, upper] brackets from
// norm probes below and Riesz-Thorin interpolation above.

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "soficlab/permutation.hpp"

namespace soficlab {

inline constexpr double kPInfinity = std::numeric_limits<double>::infinity();

// Entrywise l^p norm, p in [1, inf].
double lp_norm(const Eigen::VectorXcd& v, double p);

// Schatten p-norm (Tr |A|^p)^(1/p) = l^p norm of the singular values;
// p = inf gives the largest singular value.
double schatten_norm(const Eigen::MatrixXcd& m, double p);

// Coordinate-permuting action (sigma . v)(j) = v(sigma^{-1}(j)); an isometry
// of every l^p.
Eigen::VectorXcd permutation_action(const Permutation& sigma, const Eigen::VectorXcd& v);
Eigen::MatrixXcd permutation_matrix(const Permutation& sigma);

// Unitary actions on matrix space: conjugation A -> U A U^* and left
// multiplication A -> U A, both Schatten-p isometries. `u` is checked for
// unitarity to tolerance 1e-10.
Eigen::MatrixXcd schatten_conjugate(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& a);
Eigen::MatrixXcd schatten_left_multiply(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& a);

// Weighted product norm over a sequence of block norms f(1), f(2), ...:
//   rho(f) = (sum_j weight(j) * f(j)^q)^(1/q),
// weight(j) = 2^-j by default, or 2^-(j-1) when leading_weight_one is set
// (both summable, so rho is finite on bounded block sequences). truncate_at
// > 0 restricts the sum to j <= truncate_at.
struct ProductNormSpec {
  double q = 1.0;
  bool leading_weight_one = false;
  int truncate_at = 0;  // 0 = use all provided blocks

  double weight(int j) const;  // j is 1-based
};

double product_norm(const ProductNormSpec& spec, const std::vector<double>& block_norms);

// Certified two-sided bound on an operator norm.
struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
};

// Operator norm of T : l^p_in -> l^p_out (matrix columns = images of basis
// vectors). Exact for (1,1), (2,2), (inf,inf); bracketed for other p = p_in
// = p_out via dual-scaling power iterations (lower) and interpolation
// between the neighbouring exact exponents (upper). Mixed p_in != p_out is
// not supported and throws.
NormBracket operator_pnorm(const Eigen::MatrixXcd& t, double p_in, double p_out,
                           int probe_rounds = 6, std::uint64_t probe_seed = 1);

// Operator norm of the map (coefficients in l^p) -> (sum_s c_s M_s in S^p),
// where `columns` lists the matrices M_s. Exact at p = 2 (flattening is a
// Hilbert-space isometry) and p = 1 (max column S^1 norm); bracketed by
// probes + S^1/S^2 interpolation for 1 < p < 2. p > 2 throws.
NormBracket schatten_map_norm_bracket(const std::vector<Eigen::MatrixXcd>& columns, double p,
                                      int probe_rounds = 6, std::uint64_t probe_seed = 1);

// Flattens a matrix to a column vector (column-major), an isometry
// S^2 -> l^2.
Eigen::VectorXcd flatten(const Eigen::MatrixXcd& m);

}  // namespace soficlab
