#pragma once
// Experiment configuration: a flat key = value text file (one experiment per
// file, '#' comments). Unknown keys are rejected so typos fail loudly; every
// numeric field is validated before a pipeline runs. The element budget can
// be overridden with the SOFICDIM_CAPACITY environment variable.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "soficlab/group.hpp"

namespace soficlab {

// Unusable configuration (parse failure, bad value, inconsistent fields).
// CLI maps this to the usage exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Action { RegularLp, FiniteGroupRep, ZRotation, Betti, SchattenRegular };
std::string action_name(Action a);

enum class Construction { Random, Folner, Block, Tensor };
std::string construction_name(Construction c);

struct ExperimentConfig {
  std::string id = "experiment";
  Action action = Action::RegularLp;
  GroupDescriptor group = GroupDescriptor::free_group(2);
  int multiplicity = 1;  // coefficient dimension n of the module
  double p = 2.0;
  std::vector<std::uint32_t> levels;  // model degrees d_i (Z^2: grid side)
  Construction construction = Construction::Random;
  int tensor_k = 1;       // tensor-power exponent (construction = tensor:K)
  int f_radius = 1;       // word-metric radius of the stage set F
  bool f_positive = false;  // F = {e, generators} instead of the full ball
  int m = 1;              // stage: span words are products of m factors of F
  double delta = 0.1;     // equivariance-defect threshold
  std::vector<double> eps = {0.1};
  double rho_q = 0.0;       // product-norm exponent; 0 = follow p
  bool rho_leading_one = true;  // block weights 2^-(j-1) instead of 2^-j
  int rungs = 3;            // refinement ladder: (delta, eps) / 2^r
  std::uint64_t seed = 1;
  int order_k = 2;          // cyclic order k (finite groups, rotation blocks)
  std::vector<long long> characters = {1};  // character exponents, one per
                                            // coordinate of the finite rep
  double theta_turns = 0.0;  // rotation angle as a fraction of a full turn
  int cayley_radius = 4;     // truncation radius for the graph evidence
  std::size_t capacity = kDefaultCapacity;
};

// Parses key = value text. Throws ConfigError on unknown keys or malformed
// values; later assignments win. The result is validated.
ExperimentConfig parse_config_text(const std::string& text);

// Reads the file, parses it, and applies the SOFICDIM_CAPACITY override.
ExperimentConfig load_config(const std::string& path);

// Field and cross-field checks (delta > 0, eps in (0,1), levels nonempty,
// construction/group consistency, ...). Throws ConfigError.
void validate_config(const ExperimentConfig& cfg);

// Effective product-norm exponent: rho_q, or p when rho_q = 0.
double effective_rho_q(const ExperimentConfig& cfg);

}  // namespace soficlab
