#pragma once

namespace bnls {

/// Problem data (N, q, mu) plus the Gagliardo-Nirenberg constant C_{N,q}
/// and the Sobolev constant S that close the landscape formulas.
struct LandscapeParams {
  int dim = 5;
  double q = 3.0;
  double mu = 1.0;
  double c_gn = 1.0;
  double s_sob = 1.0;
};

/// Throws Error(ParameterOutOfRange) unless N >= 5, 2 < q < 2 + 8/N and
/// mu, C_gn, S_sob are all positive and finite.
void validate(const LandscapeParams& params);

/// Critical exponent 4* = 2N/(N-4).
double critical_exponent(int dim);

struct ExponentSet {
  double alpha0;   // (q-2)N/8 - 1, in (-1, 0)
  double alpha1;   // (2N - q(N-4))/8, in (4/N, 1)
  double alpha2;   // 4/(N-4), in (0, 4]
  double beta;     // GN interpolation exponent (N/2)(1/2 - 1/q)
  double p_crit;   // 4*
  double gamma_q;  // fiber exponent N(q-2)/4
};

ExponentSet derive_exponents(const LandscapeParams& params);

/// f(c, rho) = 1/2 - (mu/q) C^q rho^a0 c^a1 - (S^{4*}/4*) rho^a2.
/// Both power terms are formed in log space.
double f_landscape(const LandscapeParams& params, double c, double rho);

/// Unique maximizer rho_c of rho -> f(c, rho).
double rho_star(const LandscapeParams& params, double c);

struct MassThreshold {
  double M;     // max_rho f(c, rho) = 1/2 - M c^{4/N}
  double c0;    // (1/(2M))^{N/4}
  double rho0;  // rho_star(c0)
};

MassThreshold mass_threshold(const LandscapeParams& params);

/// Checks f(c2, rho) >= f(c1, rho1) on `samples` points spread uniformly over
/// [(c2/c1) rho1, rho1]. Ties are accepted within 1e-10 of the largest term.
/// Requires c1 > 0, rho1 > 0, 0 < c2 <= c1.
bool comparison_check(const LandscapeParams& params, double c1, double rho1,
                      double c2, int samples = 1000);

}  // namespace bnls
