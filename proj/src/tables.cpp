#include "bnls/tables.hpp"

#include <cmath>
#include <iomanip>

namespace bnls {
namespace {

void write_header(std::ostream& out, const MassThreshold& t) {
  out << std::setprecision(17) << "# M=" << t.M << " c0=" << t.c0
      << " rho0=" << t.rho0 << '\n';
}

}  // namespace

std::vector<PeakRow> peak_table(const LandscapeParams& params, int points) {
  const MassThreshold t = mass_threshold(params);
  std::vector<PeakRow> rows;
  for (int j = 1; j < points; ++j) {
    const double c = j == points - 1 ? t.c0 : t.c0 * j / (points - 1);
    const double rho = rho_star(params, c);
    rows.push_back({c, rho, f_landscape(params, c, rho)});
  }
  return rows;
}

std::vector<LandscapeRow> landscape_table(const LandscapeParams& params,
                                          const LandscapeSettings& settings) {
  const MassThreshold t = mass_threshold(params);
  std::vector<LandscapeRow> rows;
  const double span = std::log(settings.rho_max_factor);
  for (const PeakRow& peak : peak_table(params, settings.c_points)) {
    for (int i = 0; i < settings.rho_points; ++i) {
      const double x = -span + 2 * span * i / (settings.rho_points - 1);
      const double rho = t.rho0 * std::exp(x);
      rows.push_back({peak.c, rho, f_landscape(params, peak.c, rho)});
    }
  }
  return rows;
}

void write_peak_csv(std::ostream& out, const MassThreshold& threshold,
                    const std::vector<PeakRow>& rows) {
  write_header(out, threshold);
  out << "c,rho_c,h_c\n";
  for (const PeakRow& r : rows) {
    out << r.c << ',' << r.rho_c << ',' << r.h << '\n';
  }
}

void write_landscape_csv(std::ostream& out, const MassThreshold& threshold,
                         const std::vector<LandscapeRow>& rows) {
  write_header(out, threshold);
  out << "c,rho,f\n";
  for (const LandscapeRow& r : rows) {
    out << r.c << ',' << r.rho << ',' << r.f << '\n';
  }
}

void write_boundary_csv(std::ostream& out, const MassThreshold& threshold,
                        const std::vector<BoundarySample>& rows) {
  write_header(out, threshold);
  out << "c,mass,bend,energy,bound,positive,bound_holds\n";
  for (const BoundarySample& r : rows) {
    out << r.c << ',' << static_cast<double>(r.mass) << ','
        << static_cast<double>(r.bend) << ',' << static_cast<double>(r.energy)
        << ',' << static_cast<double>(r.bound) << ','
        << (r.positive ? "pass" : "fail") << ','
        << (r.bound_holds ? "pass" : "fail") << '\n';
  }
}

}  // namespace bnls
