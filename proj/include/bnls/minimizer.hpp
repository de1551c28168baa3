#pragma once

#include <cstddef>
#include <vector>

#include "bnls/functionals.hpp"

namespace bnls {

struct SolverConfig {
  double step0 = 1.0;          // initial (and maximal) step along the preconditioned direction
  double shrink = 0.5;         // backtracking factor
  double grow = 2.0;           // step growth after an accepted step
  double armijo = 1e-4;        // sufficient-decrease constant
  double grad_tol = 1e-7;      // ||P g||_2 / ||g||_2 at convergence
  double q_tol = 1e-6;         // |Q(u)| / ||Delta u||_2^2 at convergence
  int max_iter = 5000;
  double seed_width = 1.0;     // width of the unit Gaussian seed profile
  std::size_t grid_n = 2049;
  double r_max = 30.0;         // lower bound on the solve radius
  double domain_widths = 20.0; // solve radius in units of the seed width
  double safeguard_margin = 1e-3;
  double max_safeguard_fraction = 0.25;
};

/// Throws Error(ParameterOutOfRange) on inconsistent settings.
void validate(const SolverConfig& config);

struct Seed {
  RadialField field;
  Real s = 1;        // fiber parameter applied to the unit Gaussian
  int halvings = 0;  // number of s-halvings taken
  /// Mass of u_s as materialized (before the final renormalization), one
  /// entry per candidate s visited.
  std::vector<Real> mass_trace;
};

/// Gaussian with mass c, dilated along its fiber by halving s until
/// J(u_s) < 0 and ||Delta u_s||^2 < rho0 (1 - margin). The returned field lives on
/// a grid of radius max(r_max, domain_widths * seed width). Requires
/// 0 < c < c0 (Error MassAboveThreshold otherwise).
Seed seed(const LandscapeParams& params, const MassThreshold& threshold,
          double c, const SolverConfig& config);

struct GroundState {
  RadialField field;
  double c = 0;
  Real m = 0;              // converged energy, an upper bound for m(c)
  Real lambda = 0;
  Real q_residual = 0;     // |Q(u)| / ||Delta u||^2
  Real grad_residual = 0;  // ||P g|| / ||g||
  Real bend = 0;
  Real rho0 = 0;
  int iters = 0;
  int safeguard_hits = 0;
  bool constraint_active = false;
  /// J at the seed followed by J after every accepted step.
  std::vector<Real> energy_trace;
  /// Energy change of every accepted step.
  std::vector<Real> energy_steps;
};

/// Local minimizer of J on Lambda_{rho0}(c): preconditioned projected descent
/// with renormalization retraction and Armijo backtracking. The ascent
/// direction is the tangent gradient in the metric (sigma + Delta_h^* Delta_h)
/// with sigma = |lambda|; every accepted step strictly lowers J and keeps
/// ||Delta u||^2 below rho0 (1 - margin).
///
/// Throws MassAboveThreshold, NonConvergence (iteration cap or no further
/// descent before the tolerances are met) or SafeguardExhausted.
GroundState minimize(const LandscapeParams& params, double c,
                     const SolverConfig& config);

/// ||u||_r / (||Delta u||_2^beta ||u||_2^{1-beta}), beta = (N/2)(1/2 - 1/r).
Real gn_quotient(const RadialField& field, double r);

/// ||u||_{4*} / ||Delta u||_2.
Real sobolev_quotient(const RadialField& field);

struct ConstantEstimate {
  Real value = 0;
  int iterations = 0;
  RadialField optimizer;
};

/// Maximizes the Gagliardo-Nirenberg quotient over radial fields on `grid` by
/// preconditioned normalized gradient ascent from a unit Gaussian. The value
/// is an achieved quotient, hence a lower bound for C_{N,q} up to
/// discretization error.
ConstantEstimate estimate_gn_constant(const LandscapeParams& params,
                                      const GridPtr& grid, double q);

/// Maximizes the Sobolev quotient over u_eps = (eps + r^2)^{-(N-4)/2} times a
/// smooth cutoff on [R/2, 0.9R], golden section in log eps on [1e-2, 1e2].
/// Throws TruncationSensitivity if doubling R moves the value by > 1e-3.
ConstantEstimate estimate_sobolev_constant(const LandscapeParams& params,
                                           const GridPtr& grid);

/// Profile of the Sobolev family (with cutoff) on `grid`.
RadialField sobolev_profile(const GridPtr& grid, Real eps);

}  // namespace bnls
