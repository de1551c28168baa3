#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "bnls/landscape.hpp"
#include "bnls/minimizer.hpp"

namespace bnls {

enum class ConstantsMode { Synthetic, Estimated };

struct ConstantsSettings {
  ConstantsMode mode = ConstantsMode::Synthetic;
  double c_gn = 1.0;
  double s_sob = 1.0;
  // The Sobolev family decays like r^{-(N-4)}, so its cutoff error shrinks
  // only like (sqrt(eps)/R)^{N-4}; it gets its own, much larger grid.
  std::size_t sobolev_n = 300001;
  double sobolev_r_max = 3000.0;
};

enum class SweepSpacing { Multiples, Log };

struct SweepSettings {
  int k = 8;
  double c_min_frac = 0.05;
  double c_max_frac = 0.95;
  SweepSpacing spacing = SweepSpacing::Multiples;
  int threads = 1;
  double monotone_tol = 1e-8;       // relative decrease required between neighbours
  double subadditivity_tol = 1e-6;  // absolute slack in subadditivity and sub-homogeneity
};

struct LandscapeSettings {
  int c_points = 41;
  int rho_points = 41;
  double rho_max_factor = 4.0;  // f table spans rho0 * [1/rho_max_factor, rho_max_factor]
  int boundary_samples = 100;
  std::uint64_t seed = 20240601;
};

struct Config {
  LandscapeParams problem;  // c_gn, s_sob are the configured (synthetic) values
  ConstantsSettings constants;
  SolverConfig solver;      // grid.n and grid.r_max land in grid_n and r_max
  SweepSettings sweep;
  LandscapeSettings landscape;
};

using Environment = std::map<std::string, std::string>;

/// Snapshot of the process environment restricted to the BNLS_ prefix.
Environment process_environment();

/// Parses an INI file and applies BNLS_<SECTION>_<KEY> overrides.
/// Throws ConfigNotFound, ConfigParse (syntax, unknown key, malformed value)
/// or ParameterOutOfRange (validation).
Config load_config(const std::filesystem::path& path, const Environment& env);

/// Problem parameters with the working constants: the configured values in
/// synthetic mode, the numerical estimates in estimated mode.
LandscapeParams resolve_constants(const Config& config);

std::string_view mode_name(ConstantsMode mode);
std::string_view spacing_name(SweepSpacing spacing);

}  // namespace bnls
