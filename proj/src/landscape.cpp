#include "bnls/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bnls/error.hpp"

namespace bnls {
namespace {

[[noreturn]] void out_of_range(const std::string& what) {
  throw Error(ErrorKind::ParameterOutOfRange, what);
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    out_of_range(std::string(name) + " must be positive and finite, got " +
                 std::to_string(value));
  }
}

// log of K = -(a0/a2) mu C^q 4* / (q S^{4*}), the bracket shared by rho_c and M.
double log_bracket(const LandscapeParams& params, const ExponentSet& e) {
  return std::log(-e.alpha0 / e.alpha2) + std::log(params.mu) +
         params.q * std::log(params.c_gn) + std::log(e.p_crit) -
         std::log(params.q) - e.p_crit * std::log(params.s_sob);
}

struct LandscapeTerms {
  double subcrit;
  double crit;
};

LandscapeTerms terms(const LandscapeParams& params, const ExponentSet& e,
                     double c, double rho) {
  const double log_rho = std::log(rho);
  const double sub = std::exp(std::log(params.mu / params.q) +
                              params.q * std::log(params.c_gn) +
                              e.alpha0 * log_rho + e.alpha1 * std::log(c));
  const double crit = std::exp(e.p_crit * std::log(params.s_sob) -
                               std::log(e.p_crit) + e.alpha2 * log_rho);
  return {sub, crit};
}

}  // namespace

void validate(const LandscapeParams& params) {
  if (params.dim < 5) {
    out_of_range("N must be >= 5, got " + std::to_string(params.dim));
  }
  const double q_max = 2.0 + 8.0 / params.dim;
  if (!(params.q > 2.0 && params.q < q_max)) {
    out_of_range("q must lie in (2, " + std::to_string(q_max) + ") for N=" +
                 std::to_string(params.dim) + ", got " +
                 std::to_string(params.q));
  }
  require_positive(params.mu, "mu");
  require_positive(params.c_gn, "C_gn");
  require_positive(params.s_sob, "S_sob");
}

double critical_exponent(int dim) {
  return 2.0 * dim / (dim - 4.0);
}

ExponentSet derive_exponents(const LandscapeParams& params) {
  validate(params);
  const double n = params.dim;
  const double q = params.q;
  ExponentSet e{};
  e.alpha0 = (q - 2.0) * n / 8.0 - 1.0;
  e.alpha1 = (2.0 * n - q * (n - 4.0)) / 8.0;
  e.alpha2 = 4.0 / (n - 4.0);
  e.beta = 0.5 * n * (0.5 - 1.0 / q);
  e.p_crit = critical_exponent(params.dim);
  e.gamma_q = n * (q - 2.0) / 4.0;
  return e;
}

double f_landscape(const LandscapeParams& params, double c, double rho) {
  const ExponentSet e = derive_exponents(params);
  require_positive(c, "c");
  require_positive(rho, "rho");
  const LandscapeTerms t = terms(params, e, c, rho);
  return 0.5 - t.subcrit - t.crit;
}

double rho_star(const LandscapeParams& params, double c) {
  const ExponentSet e = derive_exponents(params);
  require_positive(c, "c");
  const double spread = e.alpha2 - e.alpha0;
  return std::exp((log_bracket(params, e) + e.alpha1 * std::log(c)) / spread);
}

MassThreshold mass_threshold(const LandscapeParams& params) {
  const ExponentSet e = derive_exponents(params);
  const double spread = e.alpha2 - e.alpha0;
  const double log_k = log_bracket(params, e);
  const double m =
      std::exp(std::log(params.mu / params.q) +
               params.q * std::log(params.c_gn) + e.alpha0 / spread * log_k) +
      std::exp(e.p_crit * std::log(params.s_sob) - std::log(e.p_crit) +
               e.alpha2 / spread * log_k);
  const double c0 = std::exp(0.25 * params.dim * (-std::log(2.0 * m)));
  return {m, c0, rho_star(params, c0)};
}

bool comparison_check(const LandscapeParams& params, double c1, double rho1,
                      double c2, int samples) {
  const ExponentSet e = derive_exponents(params);
  require_positive(c1, "c1");
  require_positive(rho1, "rho1");
  require_positive(c2, "c2");
  if (c2 > c1) {
    out_of_range("comparison requires c2 <= c1");
  }
  if (samples < 2) {
    out_of_range("comparison needs at least two samples");
  }
  const LandscapeTerms ref = terms(params, e, c1, rho1);
  const double f_ref = 0.5 - ref.subcrit - ref.crit;
  const double lo = (c2 / c1) * rho1;
  for (int i = 0; i < samples; ++i) {
    const double rho = lo + (rho1 - lo) * i / (samples - 1);
    const LandscapeTerms t = terms(params, e, c2, rho);
    const double scale =
        std::max({0.5, ref.subcrit, ref.crit, t.subcrit, t.crit});
    if (0.5 - t.subcrit - t.crit < f_ref - 1e-10 * scale) {
      return false;
    }
  }
  return true;
}

}  // namespace bnls
