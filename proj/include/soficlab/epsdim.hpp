#pragma once
// Epsilon-dimension of a finite family A of vectors: the least dimension of
// a subspace within distance eps of every member. Exact values are rarely
// computable, so the module produces certified brackets:
//
//  * upper bounds from constructed subspaces (PCA sweep at p = 2, greedy
//    residual selection with IRLS-polished distances otherwise) — any
//    subspace that works certifies its own dimension;
//  * lower bounds from the frame-trace argument: if W eps-contains A then
//    Tr(P_W M) >= sum_j ||a_j||^2 - k eps^2 for the frame operator
//    M = sum_j a_j a_j^*, while Tr(P_W M) is at most the sum of the top
//    dim(W) eigenvalues of M; the least r whose top-r eigenvalue sum reaches
//    the target is therefore a valid lower bound. On an orthonormal family
//    this reduces to ceil(k (1 - eps^2)).
//
// Lower bounds are computed in the l^2 geometry; they transfer to l^p for
// 1 <= p <= 2 because ||x||_p >= ||x||_2 coordinatewise, and to p > 2 with
// an explicit dimension-dependent eps inflation.

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace soficlab {

struct EpsDimBracket {
  int lower = 0;
  int upper = 0;
  std::string lower_method;
  std::string upper_method;
};

// Least dimension found for a subspace with dist_p(a_j, W) < eps for all j.
// If `witness_out` is non-null it receives an orthonormal basis of the
// certifying subspace (columns), so callers can audit the residuals.
int eps_dim_upper(const std::vector<Eigen::VectorXcd>& family, double eps, double p,
                  Eigen::MatrixXcd* witness_out = nullptr);

// Frame-trace lower bound (l^2 geometry; see header comment for validity
// across p). Evaluates several deterministic subfamilies — the full family,
// the norm-thresholded one, and a pivoted near-independent subset — and
// returns the best sound bound. `method_out` names the winning subfamily.
int eps_dim_lower_trace(const std::vector<Eigen::VectorXcd>& family, double eps,
                        std::string* method_out = nullptr);

// Pure-arithmetic projected-trace bound ceil(trace - k*eps), clamped at 0:
// the dimension forced when k near-unit vectors project onto a subspace
// with total projected mass `trace`.
int projected_trace_bound(double trace_value, int k, double eps);

// Packing/covering lower-bound coefficient kappa(eps, alpha) in [0, 1]:
//   1 - (log(alpha) - log 4 - log(2 + 4 eps)) / log(eps / (2 + 4 eps)),
// clamped into [0, 1]. Requires eps > 0 and alpha > 0. Increases to 1 as
// eps -> 0 with alpha fixed.
double packing_lower_bound(double eps, double alpha);

// Trace lower bound with the p > 2 transfer folded in: the lower half of
// eps_dim_bracket without the subspace search. Sound for every p >= 1 when
// the family is given in coordinates whose l^2 norm is dominated by the
// intended l^p norm (true for p <= 2 directly).
int eps_dim_lower_for_p(const std::vector<Eigen::VectorXcd>& family, double eps, double p,
                        std::string* method_out = nullptr);

// Upper + lower composed, with the p-transfer applied to the lower bound.
EpsDimBracket eps_dim_bracket(const std::vector<Eigen::VectorXcd>& family, double eps, double p);

// A bracket divided by the ambient dimension, kept as exact fractions.
struct NormalizedBracket {
  long long lower_num = 0;
  long long upper_num = 0;
  long long denom = 1;
  double lower_value = 0.0;
  double upper_value = 0.0;
  std::string lower_fraction;  // reduced "num/den" form
  std::string upper_fraction;
};

NormalizedBracket normalize_bracket(int lower_dim, int upper_dim, long long ambient);

// Max residual distance of the family to the span of `witness` columns —
// the audit counterpart of eps_dim_upper.
double family_residual(const std::vector<Eigen::VectorXcd>& family, const Eigen::MatrixXcd& witness,
                       double p);

// Feasible (certified) upper bound on dist_p(a, span of basis columns);
// exact at p = 2, IRLS-polished otherwise.
double subspace_distance_upper(const Eigen::VectorXcd& a, const Eigen::MatrixXcd& basis, double p);

}  // namespace soficlab
