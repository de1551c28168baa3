#pragma once

#include <ostream>
#include <vector>

#include "bnls/config.hpp"
#include "bnls/sweep.hpp"

namespace bnls {

struct PeakRow {
  double c;
  double rho_c;
  double h;  // h_c(rho_c) = 1/2 - M c^{4/N}
};

/// c_j = c0 j / (points - 1), j = 1..points-1; the last row is c0 itself.
std::vector<PeakRow> peak_table(const LandscapeParams& params, int points);

struct LandscapeRow {
  double c;
  double rho;
  double f;
};

/// f on the product of the peak-table masses and rho0 * [1/factor, factor]
/// (log-spaced).
std::vector<LandscapeRow> landscape_table(const LandscapeParams& params,
                                          const LandscapeSettings& settings);

void write_peak_csv(std::ostream& out, const MassThreshold& threshold,
                    const std::vector<PeakRow>& rows);
void write_landscape_csv(std::ostream& out, const MassThreshold& threshold,
                         const std::vector<LandscapeRow>& rows);
void write_boundary_csv(std::ostream& out, const MassThreshold& threshold,
                        const std::vector<BoundarySample>& rows);

}  // namespace bnls
