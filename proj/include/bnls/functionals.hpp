#pragma once

#include "bnls/grid.hpp"
#include "bnls/landscape.hpp"

namespace bnls {

/// The four integrals every closed-form quantity is built from.
struct NormBundle {
  Real mass = 0;     // ||u||_2^2
  Real bend = 0;     // A = ||Delta u||_2^2
  Real subcrit = 0;  // B = ||u||_q^q
  Real crit = 0;     // C = ||u||_{4*}^{4*}
};

NormBundle norm_bundle(const LandscapeParams& params, const RadialField& field);

/// J = A/2 - (mu/q) B - C/4*.
Real energy(const LandscapeParams& params, const NormBundle& bundle);

/// Q = A - mu N(q-2)/(4q) B - C.
Real pohozaev(const LandscapeParams& params, const NormBundle& bundle);

/// lambda = (A - mu B - C)/mass, from pairing the stationary equation with u.
Real lagrange_multiplier(const LandscapeParams& params,
                         const NormBundle& bundle);

/// Pointwise mu |u|^{q-2} u + |u|^{4*-2} u, written as sign(u)|u|^{p-1}.
Vector nonlinearity(const LandscapeParams& params, const Vector& u);

/// Delta_h(Delta_h u) - mu |u|^{q-2} u - |u|^{4*-2} u on the grid.
RadialField l2_gradient(const LandscapeParams& params, const RadialField& field);

/// g - (<g,u>/<u,u>) u with g = l2_gradient(u). The field mass must agree
/// with c to 1e-8 relative (Error MassDrift otherwise).
RadialField projected_gradient(const LandscapeParams& params,
                               const RadialField& field, double c);

/// J(u + step) - J(u) for the discrete energy, formed without subtracting two
/// nearly equal energies: the quadratic part is expanded exactly and the power
/// terms use expm1/log1p per node.
Real energy_change(const LandscapeParams& params, const RadialField& field,
                   const Vector& step);

}  // namespace bnls
