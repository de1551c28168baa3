#pragma once

#include <optional>
#include <string_view>

#include "bnls/functionals.hpp"

namespace bnls {

// Fiber map psi(s) = J(u_s) for the mass-preserving dilation
// u_s(x) = s^{N/4} u(s^{1/2} x). Everything here is evaluated from a
// NormBundle through the exact scaling laws A s^2, B s^{gamma_q}, C s^{4*};
// no field is ever interpolated.

Real psi(const LandscapeParams& params, const NormBundle& bundle, Real s);

/// psi'(s) = Q(u_s)/s.
Real psi_prime(const LandscapeParams& params, const NormBundle& bundle, Real s);

/// xi(s) = psi'(s)/s; same zeros as psi' on s > 0.
Real xi(const LandscapeParams& params, const NormBundle& bundle, Real s);
Real xi_prime(const LandscapeParams& params, const NormBundle& bundle, Real s);

/// Unique zero of xi'. Absent when B = 0 or C = 0, where xi is monotone.
std::optional<Real> xi_turning_point(const LandscapeParams& params,
                                     const NormBundle& bundle);

enum class CriticalKind { LocalMinimum, LocalMaximum, DegenerateTangency };

std::string_view kind_name(CriticalKind kind);

struct FiberAnalysis {
  Real s_turn = 0;
  Real xi_at_turn = 0;
  std::optional<Real> s1;
  std::optional<Real> s2;
  std::optional<CriticalKind> kind1;
  std::optional<CriticalKind> kind2;
  std::optional<Real> psi_at_s1;
  std::optional<Real> psi_at_s2;
};

/// Locates the (at most two) zeros of psi' by bracketed bisection on either
/// side of the turning point, to 1e-10 relative width. If xi(s_turn) is zero
/// to 1e-10 of its largest term, reports s1 = s2 = s_turn as a tangency.
/// Throws Error(DegenerateBundle) if B <= 0 or C <= 0.
FiberAnalysis analyze_fiber(const LandscapeParams& params,
                            const NormBundle& bundle);

/// Number of sign changes of psi' over `points` log-spaced samples in
/// [s_lo, s_hi]; exact zeros are skipped.
int psi_prime_sign_changes(const LandscapeParams& params,
                           const NormBundle& bundle, Real s_lo, Real s_hi,
                           int points);

}  // namespace bnls
