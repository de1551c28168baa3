#pragma once

namespace bnls {

/// Scalar used for field samples, quadrature and all functionals.
///
/// Applying the discrete bilaplacian to a smooth profile that spans a few
/// hundred nodes cancels roughly (nodes per width)^4 in relative terms, so
/// the residual floor of the constrained solver is set by this type's
/// epsilon rather than by the discretization.
using Real = long double;

}  // namespace bnls
