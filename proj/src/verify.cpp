#include "bnls/verify.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "bnls/error.hpp"
#include "bnls/fiber.hpp"
#include "bnls/functionals.hpp"

namespace bnls {
namespace {

using Rng = boost::random::mt19937_64;
using Uniform = boost::random::uniform_real_distribution<double>;
using LReal = long double;

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// f(c, rho) in extended precision from the raw definition.
LReal f_reference(const LandscapeParams& p, LReal c, LReal rho) {
  const LReal n = p.dim;
  const LReal q = p.q;
  const LReal a0 = (q - 2) * n / 8 - 1;
  const LReal a1 = (2 * n - q * (n - 4)) / 8;
  const LReal crit = 2 * n / (n - 4);
  const LReal a2 = crit / 2 - 1;
  return 0.5L - p.mu / q * std::pow(static_cast<LReal>(p.c_gn), q) *
                    std::pow(rho, a0) * std::pow(c, a1) -
         std::pow(static_cast<LReal>(p.s_sob), crit) / crit * std::pow(rho, a2);
}

// argmax over rho of f(c, .) by a log grid scan refined with golden section.
LReal argmax_reference(const LandscapeParams& p, LReal c) {
  LReal best_x = 0;
  LReal best = -INFINITY;
  for (int i = 0; i <= 800; ++i) {
    const LReal x = -40 + 80.0L * i / 800;
    const LReal v = f_reference(p, c, std::exp(x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  const LReal g = (std::sqrt(5.0L) - 1) / 2;
  LReal lo = best_x - 0.1L;
  LReal hi = best_x + 0.1L;
  LReal x1 = hi - g * (hi - lo);
  LReal x2 = lo + g * (hi - lo);
  LReal f1 = f_reference(p, c, std::exp(x1));
  LReal f2 = f_reference(p, c, std::exp(x2));
  for (int it = 0; it < 200 && hi - lo > 1e-14L; ++it) {
    if (f1 > f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f_reference(p, c, std::exp(x1));
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f_reference(p, c, std::exp(x2));
    }
  }
  return std::exp((lo + hi) / 2);
}

LandscapeParams random_params(Rng& rng) {
  Uniform unit(0.0, 1.0);
  LandscapeParams p;
  p.dim = 5 + static_cast<int>(6 * unit(rng)) % 6;
  const double q_hi = 2.0 + 8.0 / p.dim;
  p.q = 2.0 + (q_hi - 2.0) * (0.02 + 0.96 * unit(rng));
  p.mu = std::exp(-2 + 4 * unit(rng));
  p.c_gn = std::exp(-1.5 + 2 * unit(rng));
  p.s_sob = std::exp(-2.5 + 2.5 * unit(rng));
  return p;
}

CheckResult guarded(const std::string& name, double limit,
                    const std::function<CheckResult()>& body) {
  try {
    CheckResult r = body();
    r.name = name;
    r.limit = limit;
    return r;
  } catch (const std::exception& e) {
    return {name, false, NAN, limit, std::string("setup failed: ") + e.what()};
  }
}

CheckResult check_exponents() {
  double worst = 0;
  for (int n = 5; n <= 10; ++n) {
    for (int i = 1; i <= 20; ++i) {
      LandscapeParams p;
      p.dim = n;
      p.q = 2.0 + (8.0 / n) * i / 21.0;
      const ExponentSet e = derive_exponents(p);
      worst = std::max({worst, std::abs(e.alpha0 + e.alpha1 - (p.q - 2) / 2),
                        std::abs(e.gamma_q - 2 - 2 * e.alpha0),
                        std::abs(e.p_crit - 2 - 2 * e.alpha2)});
    }
  }
  return {"", worst <= 1e-12, worst, 0, "N in 5..10, 20 q per N"};
}

CheckResult check_rho_star(Rng& rng) {
  double worst = 0;
  Uniform unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const LandscapeParams p = random_params(rng);
    const double c = mass_threshold(p).c0 * (0.05 + 1.2 * unit(rng));
    const LReal ref = argmax_reference(p, c);
    worst = std::max(worst, static_cast<double>(std::abs(rho_star(p, c) / ref - 1)));
  }
  return {"", worst <= 1e-8, worst, 0, "50 random parameter sets"};
}

CheckResult check_c0(const LandscapeParams& p) {
  const MassThreshold t = mass_threshold(p);
  auto peak = [&](LReal c) { return f_reference(p, c, argmax_reference(p, c)); };
  LReal lo = t.c0 / 4;
  LReal hi = t.c0 * 4;
  for (int it = 0; it < 200 && hi - lo > 1e-16L * hi; ++it) {
    const LReal mid = (lo + hi) / 2;
    (peak(mid) > 0 ? lo : hi) = mid;
  }
  const double c_rel = static_cast<double>(std::abs(t.c0 / ((lo + hi) / 2) - 1));
  const double h0 = std::abs(f_landscape(p, t.c0, t.rho0));
  return {"", c_rel <= 1e-10 && h0 <= 1e-10, std::max(c_rel, h0), 0,
          "c0 bisection rel " + fmt(c_rel) + ", |h_c0(rho_c0)| " + fmt(h0)};
}

Real gaussian_moment_error(const GridPtr& grid, bool bending) {
  const int n = grid->dim();
  const Real pi_half = std::pow(std::numbers::pi_v<Real>, n / Real(2));
  if (!bending) {
    const RadialField g = RadialField::sample(grid, [](Real r) { return std::exp(-r * r); });
    return std::abs(integrate(*grid, g.values()) / pi_half - 1);
  }
  const RadialField g = RadialField::sample(grid, [](Real r) { return std::exp(-r * r / 2); });
  const RadialField lap = laplacian(g);
  const Real exact = pi_half * n * (n + 2) / 4;
  return std::abs(inner(lap, lap) / exact - 1);
}

CheckResult check_quadrature(const LandscapeParams& p, std::size_t n) {
  const Real err = gaussian_moment_error(build_grid(p.dim, n, 12.0), false);
  return {"", err <= 1e-6, static_cast<double>(err), 0, "R=12, n=" + std::to_string(n)};
}

CheckResult check_bending(const LandscapeParams& p, std::size_t n) {
  const Real err = gaussian_moment_error(build_grid(p.dim, n, 12.0), true);
  return {"", err <= 1e-6, static_cast<double>(err), 0, "R=12, n=" + std::to_string(n)};
}

Real laplacian_error(int dim, std::size_t n) {
  const GridPtr grid = build_grid(dim, n, 12.0);
  const RadialField g = RadialField::sample(grid, [](Real r) { return std::exp(-r * r / 2); });
  const RadialField exact = RadialField::sample(
      grid, [dim](Real r) { return (r * r - dim) * std::exp(-r * r / 2); });
  const Vector diff = laplacian(g).values() - exact.values();
  return std::sqrt(integrate(*grid, Vector(diff.array().square())));
}

CheckResult check_laplacian_order(const LandscapeParams& p, std::size_t n) {
  const std::size_t coarse = std::min<std::size_t>(n, 512);
  const double order = static_cast<double>(
      std::log2(laplacian_error(p.dim, coarse) / laplacian_error(p.dim, 2 * coarse)));
  return {"", order >= 3.9, order, 0,
          "n=" + std::to_string(coarse) + " vs " + std::to_string(2 * coarse) + ", R=12"};
}

RadialField random_mixture(const GridPtr& grid, Rng& rng, Real scale) {
  Uniform unit(0.0, 1.0);
  Real amp[3], width[3];
  for (int t = 0; t < 3; ++t) {
    amp[t] = scale * (2 * unit(rng) - 1);
    width[t] = 0.6 + 1.4 * unit(rng);
  }
  return RadialField::sample(grid, [&](Real r) {
    Real v = 0;
    for (int t = 0; t < 3; ++t) v += amp[t] * std::exp(-r * r / (2 * width[t] * width[t]));
    return v;
  });
}

CheckResult check_gradient(const LandscapeParams& p, std::size_t n, Rng& rng) {
  const GridPtr grid = build_grid(p.dim, std::min<std::size_t>(n, 1025), 12.0);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const RadialField u = random_mixture(grid, rng, 1.0);
    const RadialField d = random_mixture(grid, rng, 1.0);
    const Real eps = 1e-4L * std::sqrt(inner(u, u) / inner(d, d));
    auto j_at = [&](Real t) {
      return energy(p, norm_bundle(p, RadialField(grid, Vector(u.values() + t * d.values()))));
    };
    const Real fd = (j_at(eps) - j_at(-eps)) / (2 * eps);
    const Real paired = inner(l2_gradient(p, u), d);
    worst = std::max(worst, static_cast<double>(std::abs(paired - fd) /
                                                std::max(std::abs(fd), std::abs(paired))));
  }
  return {"", worst <= 1e-5, worst, 0, "20 random fields and directions"};
}

CheckResult check_fiber(const LandscapeParams& p, Rng& rng) {
  const MassThreshold t = mass_threshold(p);
  Uniform unit(0.0, 1.0);
  int worst_changes = 0;
  int two_zero = 0;
  int bad_order = 0;
  int bad_sign = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double mass = t.c0 * (0.02 + 0.96 * unit(rng));
    const Real bend = t.rho0 * std::exp(std::log(1e-3) + std::log(1e6) * unit(rng));
    const NormBundle b =
        admissible_bundle(p, mass, bend, 1e-3 + (1 - 1e-3) * unit(rng),
                          1e-3 + (1 - 1e-3) * unit(rng));
    worst_changes = std::max(worst_changes, psi_prime_sign_changes(p, b, 1e-8L, 1e8L, 4000));
    const FiberAnalysis a = analyze_fiber(p, b);
    if (a.s1 && a.s2 && *a.s1 != *a.s2) {
      ++two_zero;
      if (!(*a.s1 < a.s_turn && a.s_turn < *a.s2)) ++bad_order;
      if (!(*a.psi_at_s1 < 0)) ++bad_sign;
    }
  }
  const bool pass = worst_changes <= 2 && bad_order == 0 && bad_sign == 0;
  return {"", pass, static_cast<double>(worst_changes), 2,
          "1000 admissible bundles; two zeros in " + std::to_string(two_zero) +
              ", misordered " + std::to_string(bad_order) + ", psi(s1) >= 0 in " +
              std::to_string(bad_sign)};
}

CheckResult check_comparison(Rng& rng) {
  Uniform unit(0.0, 1.0);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const LandscapeParams p = random_params(rng);
    const MassThreshold t = mass_threshold(p);
    const double c1 = t.c0 * (0.05 + 0.95 * unit(rng));
    const double rho1 = t.rho0 * std::exp(-2 + 4 * unit(rng));
    const double c2 = c1 * (0.05 + 0.95 * unit(rng));
    if (!comparison_check(p, c1, rho1, c2)) ++failures;
  }
  return {"", failures == 0, static_cast<double>(failures), 0,
          "f(c2, rho2) >= f(c1, rho1) for rho2 in [c2/c1 rho1, rho1]; 100 random cases"};
}

}  // namespace

NormBundle admissible_bundle(const LandscapeParams& p, double mass, Real bend,
                             Real u_sub, Real u_crit) {
  const ExponentSet e = derive_exponents(p);
  NormBundle b;
  b.mass = mass;
  b.bend = bend;
  b.subcrit = u_sub * std::pow(static_cast<Real>(p.c_gn), static_cast<Real>(p.q)) *
              std::pow(bend, static_cast<Real>(e.gamma_q) / 2) *
              std::pow(static_cast<Real>(mass), static_cast<Real>(p.q - e.gamma_q) / 2);
  b.crit = u_crit * std::pow(static_cast<Real>(p.s_sob), static_cast<Real>(e.p_crit)) *
           std::pow(bend, static_cast<Real>(e.p_crit) / 2);
  return b;
}

std::vector<CheckResult> run_verify(const Config& config, const LandscapeParams& params) {
  validate(params);
  Rng rng(config.landscape.seed);
  const std::size_t n = config.solver.grid_n;
  std::vector<CheckResult> out;
  out.push_back(guarded("exponent-identities", 1e-12, check_exponents));
  out.push_back(guarded("rho-star-argmax", 1e-8, [&] { return check_rho_star(rng); }));
  out.push_back(guarded("c0-bisection", 1e-10, [&] { return check_c0(params); }));
  out.push_back(guarded("quadrature-gaussian", 1e-6, [&] { return check_quadrature(params, n); }));
  out.push_back(guarded("bending-gaussian", 1e-6, [&] { return check_bending(params, n); }));
  out.push_back(guarded("laplacian-order", 3.9, [&] { return check_laplacian_order(params, n); }));
  out.push_back(guarded("gradient-fd", 1e-5, [&] { return check_gradient(params, n, rng); }));
  out.push_back(guarded("fiber-zero-structure", 2, [&] { return check_fiber(params, rng); }));
  out.push_back(guarded("comparison-inequality", 0, [&] { return check_comparison(rng); }));
  return out;
}

}  // namespace bnls
