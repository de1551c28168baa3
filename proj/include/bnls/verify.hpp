#pragma once

#include <string>
#include <vector>

#include "bnls/config.hpp"

namespace bnls {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0;  // measured quantity (error, order, count)
  double limit = 0;  // threshold it is compared against
  std::string detail;
};

/// Property suite: exponent identities, rho_c against a brute-force argmax,
/// c0 by bisection, quadrature and bending oracles, Laplacian order, gradient
/// against central differences, fiber zero structure and the comparison
/// predicate. A check whose setup throws (for instance a grid too coarse to
/// build) is reported as failed with the error in `detail`.
std::vector<CheckResult> run_verify(const Config& config, const LandscapeParams& params);

/// Uniform sample of a bundle satisfying the GN and Sobolev inequalities with
/// the working constants and mass in (0, c0): A log-uniform over
/// rho0 * [1e-3, 1e3], B and C scaled below their inequality caps by u in (0,1].
NormBundle admissible_bundle(const LandscapeParams& params, double mass, Real bend,
                             Real u_sub, Real u_crit);

}  // namespace bnls
