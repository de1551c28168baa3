#include "bnls/fiber.hpp"

#include <algorithm>
#include <cmath>

#include "bnls/error.hpp"

namespace bnls {
namespace {

struct FiberExponents {
  Real gamma;  // N(q-2)/4
  Real p;      // 4*
  Real k;      // mu N(q-2)/(4q)
};

FiberExponents fiber_exponents(const LandscapeParams& params) {
  const Real gamma = params.dim * (params.q - 2.0L) / 4.0L;
  return {gamma, critical_exponent(params.dim),
          static_cast<Real>(params.mu) * gamma / params.q};
}

void require_positive_s(Real s) {
  if (!(s > 0.0L)) {
    throw Error(ErrorKind::ParameterOutOfRange,
                "fiber parameter s must be positive");
  }
}

// Largest of the three terms of xi(s), the scale for "xi == 0" decisions.
Real xi_scale(const NormBundle& b, const FiberExponents& e, Real s) {
  return std::max({std::abs(b.bend), e.k * std::pow(s, e.gamma - 2) * b.subcrit,
                   std::pow(s, e.p - 2) * b.crit});
}

// Geometric bisection for the sign change of xi in [lo, hi].
Real bisect_xi(const LandscapeParams& params, const NormBundle& b, Real lo,
               Real hi) {
  const bool lo_negative = xi(params, b, lo) < 0;
  for (int it = 0; it < 400 && hi / lo - 1 > 1e-10L; ++it) {
    const Real mid = std::sqrt(lo * hi);
    if ((xi(params, b, mid) < 0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo * hi);
}

CriticalKind classify(const LandscapeParams& params, const NormBundle& b,
                      Real s) {
  constexpr Real kProbe = 1e-6L;
  const Real left = psi_prime(params, b, s * (1 - kProbe));
  const Real right = psi_prime(params, b, s * (1 + kProbe));
  if (left < 0 && right > 0) {
    return CriticalKind::LocalMinimum;
  }
  if (left > 0 && right < 0) {
    return CriticalKind::LocalMaximum;
  }
  return CriticalKind::DegenerateTangency;
}

}  // namespace

Real psi(const LandscapeParams& params, const NormBundle& b, Real s) {
  require_positive_s(s);
  const FiberExponents e = fiber_exponents(params);
  return 0.5L * s * s * b.bend -
         static_cast<Real>(params.mu) / params.q * std::pow(s, e.gamma) *
             b.subcrit -
         std::pow(s, e.p) / e.p * b.crit;
}

Real psi_prime(const LandscapeParams& params, const NormBundle& b, Real s) {
  require_positive_s(s);
  const FiberExponents e = fiber_exponents(params);
  return s * b.bend - e.k * std::pow(s, e.gamma - 1) * b.subcrit -
         std::pow(s, e.p - 1) * b.crit;
}

Real xi(const LandscapeParams& params, const NormBundle& b, Real s) {
  require_positive_s(s);
  const FiberExponents e = fiber_exponents(params);
  return b.bend - e.k * std::pow(s, e.gamma - 2) * b.subcrit -
         std::pow(s, e.p - 2) * b.crit;
}

Real xi_prime(const LandscapeParams& params, const NormBundle& b, Real s) {
  require_positive_s(s);
  const FiberExponents e = fiber_exponents(params);
  return -(e.gamma - 2) * e.k * std::pow(s, e.gamma - 3) * b.subcrit -
         (e.p - 2) * std::pow(s, e.p - 3) * b.crit;
}

std::optional<Real> xi_turning_point(const LandscapeParams& params,
                                     const NormBundle& b) {
  if (!(b.subcrit > 0) || !(b.crit > 0)) {
    return std::nullopt;
  }
  const FiberExponents e = fiber_exponents(params);
  // (2 - gamma) k B s^{gamma-3} = (p - 2) C s^{p-3}
  const Real ratio = (2 - e.gamma) * e.k * b.subcrit / ((e.p - 2) * b.crit);
  return std::pow(ratio, 1 / (e.p - e.gamma));
}

std::string_view kind_name(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::LocalMinimum: return "local-minimum";
    case CriticalKind::LocalMaximum: return "local-maximum";
    case CriticalKind::DegenerateTangency: return "degenerate-tangency";
  }
  return "unknown";
}

FiberAnalysis analyze_fiber(const LandscapeParams& params,
                            const NormBundle& b) {
  const std::optional<Real> turn = xi_turning_point(params, b);
  if (!turn) {
    throw Error(ErrorKind::DegenerateBundle,
                "fiber analysis needs ||u||_q^q > 0 and ||u||_{4*}^{4*} > 0");
  }
  const FiberExponents e = fiber_exponents(params);
  FiberAnalysis out;
  out.s_turn = *turn;
  out.xi_at_turn = xi(params, b, *turn);
  if (std::abs(out.xi_at_turn) <= 1e-10L * xi_scale(b, e, *turn)) {
    out.s1 = out.s2 = *turn;
    out.kind1 = out.kind2 = CriticalKind::DegenerateTangency;
    out.psi_at_s1 = out.psi_at_s2 = psi(params, b, *turn);
    return out;
  }
  if (out.xi_at_turn < 0) {
    return out;
  }
  // xi -> -inf at both ends, so geometric expansion always finds a bracket.
  Real lo = *turn;
  while (xi(params, b, lo) >= 0) {
    lo *= 0.5L;
  }
  Real hi = *turn;
  while (xi(params, b, hi) >= 0) {
    hi *= 2;
  }
  const Real s1 = bisect_xi(params, b, lo, *turn);
  const Real s2 = bisect_xi(params, b, *turn, hi);
  out.s1 = s1;
  out.s2 = s2;
  out.kind1 = classify(params, b, s1);
  out.kind2 = classify(params, b, s2);
  out.psi_at_s1 = psi(params, b, s1);
  out.psi_at_s2 = psi(params, b, s2);
  return out;
}

int psi_prime_sign_changes(const LandscapeParams& params, const NormBundle& b,
                           Real s_lo, Real s_hi, int points) {
  int changes = 0;
  int last_sign = 0;
  const Real log_lo = std::log(s_lo);
  const Real step = (std::log(s_hi) - log_lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const Real value = psi_prime(params, b, std::exp(log_lo + step * i));
    const int sign = (value > 0) - (value < 0);
    if (sign == 0) {
      continue;
    }
    if (last_sign != 0 && sign != last_sign) {
      ++changes;
    }
    last_sign = sign;
  }
  return changes;
}

}  // namespace bnls
