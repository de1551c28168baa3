#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnls/config.hpp"
#include "bnls/error.hpp"

namespace bnls {

/// c_k = c_i + c_j; margin = m_k - m_i - m_j (a violation when > tol).
struct TripleCheck {
  int i, j, k;
  Real margin;
};

/// c_j = theta c_i with theta > 1; margin = m_j - theta m_i.
struct PairCheck {
  int i, j;
  Real theta;
  Real margin;
};

struct SweepFlags {
  bool monotone_decreasing = true;
  std::vector<int> monotone_violations;  // i with m_{i+1} not below m_i
  bool all_negative = true;
  std::vector<int> nonnegative;
  int triples_checked = 0;
  std::vector<TripleCheck> subadditivity_violations;
  std::optional<TripleCheck> worst_triple;
  int pairs_checked = 0;
  std::vector<PairCheck> subhomogeneity_violations;
  std::optional<PairCheck> worst_pair;
};

/// m(theta alpha) - theta m(alpha).
Real subhomogeneity_margin(Real m_alpha, Real m_theta_alpha, Real theta);

/// Recomputes every flag from the arrays alone; c ascending.
SweepFlags evaluate_flags(const std::vector<double>& c, const std::vector<Real>& m,
                          const SweepSettings& settings);

/// Masses visited by the sweep, ascending.
std::vector<double> sweep_masses(const SweepSettings& settings, double c0);

struct BoundarySample {
  double c;
  Real mass;
  Real bend;
  Real energy;
  Real bound;        // rho0 f(c, rho0)
  bool positive;     // J > 0
  bool bound_holds;  // J >= bound - 1e-8
};

/// Random Gaussian mixtures rescaled to mass c and bend rho0, c uniform in
/// [c_lo_frac, c_hi_frac] c0. Mass is set by amplitude, bend by the
/// mass-preserving dilation, applied analytically to the mixture.
std::vector<BoundarySample> sample_boundary(const LandscapeParams& params,
                                            const SolverConfig& grid_settings,
                                            int count, std::uint64_t seed,
                                            double c_lo_frac = 0.05,
                                            double c_hi_frac = 0.95);

struct SweepReport {
  std::vector<double> c;
  std::vector<Real> m;
  std::vector<Real> lambda;
  std::vector<Real> bend;
  std::vector<Real> q_residual;
  std::vector<int> iters;
  SweepFlags flags;
  int boundary_samples = 0;
  int boundary_positive_samples = 0;
  bool complete = true;
  std::optional<ErrorKind> failure_kind;
  std::string failure;
};

/// Solves every sweep mass, possibly concurrently; a failed solve stops the
/// sweep and the report keeps the masses solved so far.
SweepReport run_sweep(const LandscapeParams& params, const Config& config);

}  // namespace bnls
