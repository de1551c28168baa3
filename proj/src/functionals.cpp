#include "bnls/functionals.hpp"

#include <cmath>

#include "bnls/error.hpp"

namespace bnls {
namespace {

Real abs_pow_sum(const RadialGrid& grid, const Vector& u, Real exponent) {
  Real sum = 0.0L;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u[i] != 0.0L) {
      sum += grid.weights()[i] * std::pow(std::abs(u[i]), exponent);
    }
  }
  return sum;
}

// |a + d|^e - |a|^e without cancellation when |d| << |a|.
Real abs_pow_change(Real a, Real d, Real e) {
  if (a != 0.0L) {
    const Real t = d / a;
    if (t > -1.0L) {
      return std::pow(std::abs(a), e) * std::expm1(e * std::log1p(t));
    }
  }
  return std::pow(std::abs(a + d), e) - std::pow(std::abs(a), e);
}

}  // namespace

NormBundle norm_bundle(const LandscapeParams& params,
                       const RadialField& field) {
  const RadialGrid& grid = field.grid();
  const Vector& u = field.values();
  const Vector lap = grid.laplacian_matrix() * u;
  NormBundle b;
  b.mass = integrate(grid, Vector(u.array().square()));
  b.bend = integrate(grid, Vector(lap.array().square()));
  b.subcrit = abs_pow_sum(grid, u, params.q);
  b.crit = abs_pow_sum(grid, u, critical_exponent(params.dim));
  return b;
}

Real energy(const LandscapeParams& params, const NormBundle& b) {
  const Real p = critical_exponent(params.dim);
  return 0.5L * b.bend - static_cast<Real>(params.mu) / params.q * b.subcrit -
         b.crit / p;
}

Real pohozaev(const LandscapeParams& params, const NormBundle& b) {
  const Real k = static_cast<Real>(params.mu) * params.dim * (params.q - 2.0L) /
                 (4.0L * params.q);
  return b.bend - k * b.subcrit - b.crit;
}

Real lagrange_multiplier(const LandscapeParams& params, const NormBundle& b) {
  if (!(b.mass > 0.0L)) {
    throw Error(ErrorKind::ZeroMass, "Lagrange multiplier needs mass > 0");
  }
  return (b.bend - static_cast<Real>(params.mu) * b.subcrit - b.crit) / b.mass;
}

Vector nonlinearity(const LandscapeParams& params, const Vector& u) {
  const Real q1 = params.q - 1.0L;
  const Real p1 = critical_exponent(params.dim) - 1.0L;
  Vector out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const Real a = std::abs(u[i]);
    if (a == 0.0L) {
      out[i] = 0.0L;
      continue;
    }
    const Real mag = params.mu * std::pow(a, q1) + std::pow(a, p1);
    out[i] = u[i] > 0.0L ? mag : -mag;
  }
  return out;
}

RadialField l2_gradient(const LandscapeParams& params,
                        const RadialField& field) {
  const SparseMatrix& lap = field.grid().laplacian_matrix();
  Vector g = lap * (lap * field.values());
  g -= nonlinearity(params, field.values());
  return RadialField(field.grid_ptr(), std::move(g));
}

RadialField projected_gradient(const LandscapeParams& params,
                               const RadialField& field, double c) {
  const Real mass = inner(field, field);
  if (!(c > 0.0) || std::abs(mass - c) > 1e-8L * c) {
    throw Error(ErrorKind::MassDrift,
                "projected gradient: field mass is off the constraint c=" +
                    std::to_string(c));
  }
  const RadialField g = l2_gradient(params, field);
  const Real along = inner(g, field) / mass;
  Vector pg = g.values() - along * field.values();
  return RadialField(field.grid_ptr(), std::move(pg));
}

Real energy_change(const LandscapeParams& params, const RadialField& field,
                   const Vector& step) {
  const RadialGrid& grid = field.grid();
  const Vector& u = field.values();
  if (step.size() != u.size()) {
    throw Error(ErrorKind::LengthMismatch, "energy_change: step length");
  }
  const SparseMatrix& lap = grid.laplacian_matrix();
  const Vector lu = lap * u;
  const Vector ld = lap * step;
  const Real quad =
      (grid.weights().array() * ld.array() * (lu.array() + 0.5L * ld.array()))
          .sum();
  const Real q = params.q;
  const Real p = critical_exponent(params.dim);
  Real sub = 0.0L;
  Real crit = 0.0L;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (step[i] == 0.0L) {
      continue;
    }
    sub += grid.weights()[i] * abs_pow_change(u[i], step[i], q);
    crit += grid.weights()[i] * abs_pow_change(u[i], step[i], p);
  }
  return quad - static_cast<Real>(params.mu) / q * sub - crit / p;
}

}  // namespace bnls
