#include "bnls/minimizer.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "bnls/error.hpp"
#include "bnls/fiber.hpp"

namespace bnls {
namespace {

using Ldlt = Eigen::SimplicialLDLT<SparseMatrix>;

// Euclidean Hessian of 1/2 <L u, L u>_W, i.e. L^T W L.
SparseMatrix bending_operator(const RadialGrid& grid) {
  const SparseMatrix& lap = grid.laplacian_matrix();
  const SparseMatrix weighted = grid.weights().asDiagonal() * lap;
  return SparseMatrix(lap.transpose() * weighted);
}

// a * bending + b * W, factored.
void factor_shifted(Ldlt& solver, const SparseMatrix& bending,
                    const Vector& weights, Real a, Real b) {
  SparseMatrix h = a * bending;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    h.coeffRef(i, i) += b * weights[i];
  }
  solver.compute(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "preconditioner factorization failed");
  }
}

Real weighted_norm(const Vector& weights, const Vector& v) {
  return std::sqrt((weights.array() * v.array().square()).sum());
}

std::string describe(Real value) {
  std::ostringstream out;
  out.precision(6);
  out << static_cast<double>(value);
  return out.str();
}

void require_subthreshold(double c, const MassThreshold& threshold) {
  if (!(c > 0.0)) {
    throw Error(ErrorKind::ParameterOutOfRange, "mass c must be positive");
  }
  if (c >= threshold.c0) {
    throw Error(ErrorKind::MassAboveThreshold,
                "mass c=" + describe(c) + " is not below c0=" +
                    describe(threshold.c0));
  }
}

Real smooth_step(Real t) {
  if (t <= 0) {
    return 0;
  }
  if (t >= 1) {
    return 1;
  }
  const Real a = std::exp(-1 / t);
  const Real b = std::exp(-1 / (1 - t));
  return a / (a + b);
}

}  // namespace

void validate(const SolverConfig& config) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::ParameterOutOfRange, "solver config: " + what);
  };
  if (!(config.step0 > 0)) fail("step0 must be > 0");
  if (!(config.shrink > 0 && config.shrink < 1)) fail("shrink must lie in (0,1)");
  if (!(config.grow > 1)) fail("grow must be > 1");
  if (!(config.armijo > 0 && config.armijo < 0.5)) fail("armijo must lie in (0,1/2)");
  if (!(config.grad_tol > 0) || !(config.q_tol > 0)) fail("tolerances must be > 0");
  if (config.max_iter < 1) fail("max_iter must be >= 1");
  if (!(config.seed_width > 0)) fail("seed_width must be > 0");
  if (!(config.domain_widths > 0)) fail("domain_widths must be > 0");
  if (!(config.safeguard_margin >= 0 && config.safeguard_margin < 1)) {
    fail("safeguard_margin must lie in [0,1)");
  }
  if (!(config.max_safeguard_fraction > 0 && config.max_safeguard_fraction <= 1)) {
    fail("max_safeguard_fraction must lie in (0,1]");
  }
}

Seed seed(const LandscapeParams& params, const MassThreshold& threshold,
          double c, const SolverConfig& config) {
  validate(params);
  validate(config);
  require_subthreshold(c, threshold);
  const int dim = params.dim;
  const Real width = config.seed_width;
  const GridPtr base = build_grid(dim, config.grid_n, config.r_max);
  const RadialField unit = RadialField::sample(
      base, [&](Real r) { return std::exp(-r * r / (2 * width * width)); });
  const Real amplitude = std::sqrt(c / inner(unit, unit));
  const Real rho_cap = threshold.rho0 * (1 - config.safeguard_margin);

  std::vector<Real> masses;
  Real s = 1;
  for (int halvings = 0; halvings <= 60; ++halvings, s *= 0.5L) {
    const Real width_s = width / std::sqrt(s);
    const double radius = std::max(
        config.r_max, static_cast<double>(config.domain_widths * width_s));
    const GridPtr grid = build_grid(dim, config.grid_n, radius);
    const Real a_s = amplitude * std::pow(s, 0.25L * dim);
    RadialField u_s = RadialField::sample(grid, [&](Real r) {
      return a_s * std::exp(-s * r * r / (2 * width * width));
    });
    const Real mass = inner(u_s, u_s);
    masses.push_back(mass);
    u_s = RadialField(grid, Vector(u_s.values() * std::sqrt(c / mass)));
    const NormBundle b = norm_bundle(params, u_s);
    if (energy(params, b) < 0 && b.bend < rho_cap) {
      return Seed{std::move(u_s), s, halvings, std::move(masses)};
    }
  }
  throw Error(ErrorKind::NonConvergence,
              "seed: no fiber scaling with J < 0 inside Lambda_rho0 after 60 "
              "halvings");
}

GroundState minimize(const LandscapeParams& params, double c,
                     const SolverConfig& config) {
  validate(params);
  validate(config);
  const MassThreshold threshold = mass_threshold(params);
  Seed start = seed(params, threshold, c, config);

  const GridPtr grid = start.field.grid_ptr();
  const Vector& w = grid->weights();
  const SparseMatrix& lap = grid->laplacian_matrix();
  const SparseMatrix bending = bending_operator(*grid);
  const Real mass_target = c;
  const Real rho_cap = threshold.rho0 * (1 - config.safeguard_margin);

  GroundState out{start.field, c, 0, 0, 0, 0, 0, 0, 0, 0, false, {}, {}};
  out.rho0 = threshold.rho0;
  Vector u = start.field.values();
  out.energy_trace.push_back(energy(params, norm_bundle(params, start.field)));

  Ldlt solver;
  Real sigma_factored = -1;
  Real tau = config.step0;
  int guarded_iters = 0;
  bool stalled = false;

  for (int iter = 0;; ++iter) {
    const RadialField field(grid, u);
    const NormBundle b = norm_bundle(params, field);
    const Vector nl = nonlinearity(params, u);

    // Monitored residual: W-Riesz representative of the discrete gradient.
    const Vector g = (bending * u).cwiseQuotient(w) - nl;
    const Vector pg = g - ((w.array() * g.array() * u.array()).sum() / b.mass) * u;
    out.grad_residual = weighted_norm(w, pg) / weighted_norm(w, g);
    out.q_residual = std::abs(pohozaev(params, b)) / b.bend;
    out.lambda = lagrange_multiplier(params, b);
    out.bend = b.bend;
    out.m = energy(params, b);
    out.iters = iter;
    if (out.grad_residual < config.grad_tol && out.q_residual < config.q_tol) {
      break;
    }
    if (iter >= config.max_iter || stalled) {
      throw Error(ErrorKind::NonConvergence,
                  std::string(stalled ? "no further descent" : "iteration cap") +
                      " after " + std::to_string(iter) +
                      " iterations: gradient residual " +
                      describe(out.grad_residual) + ", Pohozaev residual " +
                      describe(out.q_residual));
    }

    const Real sigma = std::max<Real>(std::abs(out.lambda), 1e-6L * b.bend / b.mass);
    if (sigma_factored < 0 || std::abs(sigma / sigma_factored - 1) > 0.5L) {
      factor_shifted(solver, bending, w, 1, sigma);
      sigma_factored = sigma;
    }
    // Euclidean gradient of the discrete energy and its tangent preconditioned
    // direction with respect to the constraint <u, u>_W = c.
    const Vector grad = bending * u - w.cwiseProduct(nl);
    const Vector wu = w.cwiseProduct(u);
    const Vector d1 = solver.solve(grad);
    const Vector d2 = solver.solve(wu);
    const Vector dir = d1 - (wu.dot(d1) / wu.dot(d2)) * d2;
    const Real slope = grad.dot(dir);
    if (!(slope > 0)) {
      stalled = true;
      continue;
    }
    const Real ud = wu.dot(dir);
    const Real dd = (w.array() * dir.array().square()).sum();

    bool accepted = false;
    bool guarded = false;
    for (int trial = 0; trial < 100; ++trial, tau *= config.shrink) {
      const Real delta =
          (b.mass - mass_target - 2 * tau * ud + tau * tau * dd) / mass_target;
      const Real km1 = std::expm1(-0.5L * std::log1p(delta));
      const Vector step = km1 * u - (tau * (1 + km1)) * dir;
      const Vector lap_trial = lap * (u + step);
      if ((w.array() * lap_trial.array().square()).sum() >= rho_cap) {
        guarded = true;
        continue;
      }
      const Real change = energy_change(params, field, step);
      if (change < 0 && change <= -config.armijo * tau * slope) {
        u += step;
        out.energy_steps.push_back(change);
        out.energy_trace.push_back(out.energy_trace.back() + change);
        accepted = true;
        break;
      }
    }
    if (guarded) {
      ++guarded_iters;
      out.safeguard_hits = guarded_iters;
      out.constraint_active = true;
      if (iter >= 20 &&
          guarded_iters > config.max_safeguard_fraction * (iter + 1)) {
        throw Error(ErrorKind::SafeguardExhausted,
                    "rho0 safeguard bound on " + std::to_string(guarded_iters) +
                        " of " + std::to_string(iter + 1) +
                        " steps; the constants do not confine the minimizer");
      }
    }
    if (!accepted) {
      stalled = true;
      tau = config.step0;
      continue;
    }
    tau = std::min(static_cast<Real>(config.step0), tau * config.grow);
  }
  out.field = RadialField(grid, u);
  return out;
}

Real gn_quotient(const RadialField& field, double r) {
  const RadialGrid& grid = field.grid();
  const Real beta = 0.5L * grid.dim() * (0.5L - 1.0L / r);
  const Vector& u = field.values();
  const Real mass = integrate(grid, Vector(u.array().square()));
  const Real bend = integrate(grid, Vector((grid.laplacian_matrix() * u).array().square()));
  const Real lr = integrate(grid, Vector(u.array().abs().pow(static_cast<Real>(r))));
  return std::pow(lr, 1 / static_cast<Real>(r)) /
         (std::pow(bend, beta / 2) * std::pow(mass, (1 - beta) / 2));
}

Real sobolev_quotient(const RadialField& field) {
  const RadialGrid& grid = field.grid();
  const Real p = critical_exponent(grid.dim());
  const Vector& u = field.values();
  const Real bend = integrate(grid, Vector((grid.laplacian_matrix() * u).array().square()));
  const Real lp = integrate(grid, Vector(u.array().abs().pow(p)));
  return std::pow(lp, 1 / p) / std::sqrt(bend);
}

ConstantEstimate estimate_gn_constant(const LandscapeParams& params,
                                      const GridPtr& grid, double q) {
  const Real p = critical_exponent(params.dim);
  if (!(q > 2.0 && q < p)) {
    throw Error(ErrorKind::ParameterOutOfRange,
                "GN exponent must lie in (2, 4*)");
  }
  if (grid->dim() != params.dim) {
    throw Error(ErrorKind::GridMismatch, "grid dimension differs from N");
  }
  const Real beta = 0.5L * params.dim * (0.5L - 1.0L / q);
  const Real qr = q;
  const Vector& w = grid->weights();
  const SparseMatrix& lap = grid->laplacian_matrix();
  const SparseMatrix bending = bending_operator(*grid);

  struct Parts {
    Real mass, bend, lq;
  };
  auto parts = [&](const Vector& u) {
    const Vector lu = lap * u;
    return Parts{(w.array() * u.array().square()).sum(),
                 (w.array() * lu.array().square()).sum(),
                 (w.array() * u.array().abs().pow(qr)).sum()};
  };
  // log of the quotient
  auto log_quotient = [&](const Parts& s) {
    return std::log(s.lq) / qr - beta / 2 * std::log(s.bend) -
           (1 - beta) / 2 * std::log(s.mass);
  };

  Vector u = RadialField::sample(grid, [](Real r) {
               return std::exp(-r * r / 2);
             }).values();
  u /= std::sqrt((w.array() * u.array().square()).sum());
  Parts cur = parts(u);
  Real phi = log_quotient(cur);
  Ldlt solver;
  for (int iter = 0; iter < 500; ++iter) {
    Vector signed_pow(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      signed_pow[i] = (u[i] < 0 ? -1 : 1) * std::pow(std::abs(u[i]), qr - 1);
    }
    const Vector grad = w.cwiseProduct(signed_pow) / cur.lq -
                        (beta / cur.bend) * (bending * u) -
                        ((1 - beta) / cur.mass) * w.cwiseProduct(u);
    factor_shifted(solver, bending, w, beta / cur.bend, (1 - beta) / cur.mass);
    const Vector dir = solver.solve(grad);
    const Real slope = grad.dot(dir);
    // slope is the squared dual gradient norm and bounds the remaining gain
    // in log Q to leading order.
    if (slope < 1e-14L) {
      return {std::exp(phi), iter, RadialField(grid, u)};
    }
    bool accepted = false;
    for (Real tau = 1; tau > 1e-12L; tau *= 0.5L) {
      Vector trial = u + tau * dir;
      trial /= std::sqrt((w.array() * trial.array().square()).sum());
      const Parts next = parts(trial);
      const Real phi_next = log_quotient(next);
      if (phi_next >= phi + 1e-4L * tau * slope) {
        u = std::move(trial);
        cur = next;
        phi = phi_next;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      break;
    }
  }
  throw Error(ErrorKind::NonConvergence,
              "GN quotient ascent did not converge");
}

RadialField sobolev_profile(const GridPtr& grid, Real eps) {
  const Real r_max = grid->r_max();
  const Real power = -(grid->dim() - 4) / 2.0L;
  const Real inner_edge = 0.5L * r_max;
  const Real outer_edge = 0.9L * r_max;
  return RadialField::sample(grid, [&](Real r) {
    const Real cut = smooth_step((outer_edge - r) / (outer_edge - inner_edge));
    return cut == 0 ? Real(0) : std::pow(eps + r * r, power) * cut;
  });
}

ConstantEstimate estimate_sobolev_constant(const LandscapeParams& params,
                                           const GridPtr& grid) {
  if (grid->dim() != params.dim) {
    throw Error(ErrorKind::GridMismatch, "grid dimension differs from N");
  }
  auto value_at = [&](Real log_eps) {
    return sobolev_quotient(sobolev_profile(grid, std::exp(log_eps)));
  };
  const Real golden = (std::sqrt(5.0L) - 1) / 2;
  Real lo = std::log(1e-2L);
  Real hi = std::log(1e2L);
  Real x1 = hi - golden * (hi - lo);
  Real x2 = lo + golden * (hi - lo);
  Real f1 = value_at(x1);
  Real f2 = value_at(x2);
  int evals = 2;
  while (hi - lo > 1e-6L) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = value_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = value_at(x2);
    }
    ++evals;
  }
  const Real best_log_eps = f1 > f2 ? x1 : x2;
  const Real best = std::max(f1, f2);
  const GridPtr wide = build_grid(grid->dim(), 2 * grid->size(), 2 * grid->r_max());
  const Real widened =
      sobolev_quotient(sobolev_profile(wide, std::exp(best_log_eps)));
  if (std::abs(widened / best - 1) > 1e-3L) {
    throw Error(ErrorKind::TruncationSensitivity,
                "Sobolev quotient moves by " + describe(widened / best - 1) +
                    " when R doubles; increase r_max");
  }
  return {best, evals, sobolev_profile(grid, std::exp(best_log_eps))};
}

}  // namespace bnls
