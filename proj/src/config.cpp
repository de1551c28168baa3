#include "bnls/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <set>
#include <vector>

#include "bnls/error.hpp"

extern char** environ;

namespace bnls {
namespace {

namespace pt = boost::property_tree;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return std::toupper(ch); });
  return s;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
  const auto [end, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || end != last || first == last) {
    throw Error(ErrorKind::ConfigParse,
                "key " + key + ": cannot parse '" + text + "'");
  }
  return value;
}

struct Binding {
  std::string section;
  std::string key;
  std::function<void(const std::string& full_key, const std::string& text)> set;
};

template <class T>
Binding bind(std::string section, std::string key, T& target) {
  return {std::move(section), std::move(key),
          [&target](const std::string& full, const std::string& text) {
            target = parse_number<T>(full, text);
          }};
}

std::vector<Binding> bindings(Config& c) {
  std::vector<Binding> b{
      bind("problem", "N", c.problem.dim),
      bind("problem", "q", c.problem.q),
      bind("problem", "mu", c.problem.mu),
      {"constants", "mode",
       [&c](const std::string& full, const std::string& text) {
         if (text == "synthetic") {
           c.constants.mode = ConstantsMode::Synthetic;
         } else if (text == "estimated") {
           c.constants.mode = ConstantsMode::Estimated;
         } else {
           throw Error(ErrorKind::ConfigParse,
                       "key " + full + ": expected synthetic or estimated");
         }
       }},
      bind("constants", "C_gn", c.constants.c_gn),
      bind("constants", "S_sob", c.constants.s_sob),
      bind("constants", "sobolev_n", c.constants.sobolev_n),
      bind("constants", "sobolev_r_max", c.constants.sobolev_r_max),
      bind("grid", "n", c.solver.grid_n),
      bind("grid", "r_max", c.solver.r_max),
      bind("solver", "step0", c.solver.step0),
      bind("solver", "shrink", c.solver.shrink),
      bind("solver", "grow", c.solver.grow),
      bind("solver", "armijo", c.solver.armijo),
      bind("solver", "grad_tol", c.solver.grad_tol),
      bind("solver", "q_tol", c.solver.q_tol),
      bind("solver", "max_iter", c.solver.max_iter),
      bind("solver", "seed_width", c.solver.seed_width),
      bind("solver", "domain_widths", c.solver.domain_widths),
      bind("solver", "safeguard_margin", c.solver.safeguard_margin),
      bind("solver", "max_safeguard_fraction", c.solver.max_safeguard_fraction),
      bind("sweep", "k", c.sweep.k),
      bind("sweep", "c_min_frac", c.sweep.c_min_frac),
      bind("sweep", "c_max_frac", c.sweep.c_max_frac),
      {"sweep", "spacing",
       [&c](const std::string& full, const std::string& text) {
         if (text == "multiples") {
           c.sweep.spacing = SweepSpacing::Multiples;
         } else if (text == "log") {
           c.sweep.spacing = SweepSpacing::Log;
         } else {
           throw Error(ErrorKind::ConfigParse,
                       "key " + full + ": expected multiples or log");
         }
       }},
      bind("sweep", "threads", c.sweep.threads),
      bind("sweep", "monotone_tol", c.sweep.monotone_tol),
      bind("sweep", "subadditivity_tol", c.sweep.subadditivity_tol),
      bind("landscape", "c_points", c.landscape.c_points),
      bind("landscape", "rho_points", c.landscape.rho_points),
      bind("landscape", "rho_max_factor", c.landscape.rho_max_factor),
      bind("landscape", "boundary_samples", c.landscape.boundary_samples),
      bind("landscape", "seed", c.landscape.seed),
  };
  return b;
}

void validate(const Config& c) {
  validate(LandscapeParams{c.problem.dim, c.problem.q, c.problem.mu,
                           c.constants.c_gn, c.constants.s_sob});
  validate(c.solver);
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::ParameterOutOfRange, what);
  };
  // grid.n and grid.r_max are validated by the grid module when a grid is
  // built, so verify can report a too-coarse grid as a named failed check.
  if (c.constants.sobolev_n < 64 || !(c.constants.sobolev_r_max > 0)) {
    fail("constants: Sobolev grid needs sobolev_n >= 64 and sobolev_r_max > 0");
  }
  if (c.sweep.k < 4) fail("sweep.k must be >= 4");
  if (!(0 < c.sweep.c_min_frac && c.sweep.c_min_frac < c.sweep.c_max_frac &&
        c.sweep.c_max_frac < 1)) {
    fail("sweep: need 0 < c_min_frac < c_max_frac < 1");
  }
  if (c.sweep.threads < 1) fail("sweep.threads must be >= 1");
  if (!(c.sweep.monotone_tol >= 0 && c.sweep.subadditivity_tol >= 0)) {
    fail("sweep tolerances must be >= 0");
  }
  if (c.landscape.c_points < 2 || c.landscape.rho_points < 2) {
    fail("landscape tables need at least 2 points per axis");
  }
  if (!(c.landscape.rho_max_factor > 1)) fail("landscape.rho_max_factor must be > 1");
  if (c.landscape.boundary_samples < 0) fail("landscape.boundary_samples must be >= 0");
}

}  // namespace

Environment process_environment() {
  Environment env;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    const std::string entry(*e);
    const auto eq = entry.find('=');
    if (eq != std::string::npos && entry.rfind("BNLS_", 0) == 0) {
      env.emplace(entry.substr(0, eq), entry.substr(eq + 1));
    }
  }
  return env;
}

Config load_config(const std::filesystem::path& path, const Environment& env) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorKind::ConfigNotFound,
                "config file not found: " + path.string());
  }
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::ConfigParse, e.what());
  }

  Config config;
  const std::vector<Binding> table = bindings(config);
  std::set<std::string> known;
  for (const Binding& b : table) {
    known.insert(b.section + "." + b.key);
  }
  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty()) {
      throw Error(ErrorKind::ConfigParse,
                  "key '" + section + "' outside any section");
    }
    for (const auto& [key, value] : entries) {
      if (!known.count(section + "." + key)) {
        throw Error(ErrorKind::ConfigParse,
                    "unknown key " + section + "." + key);
      }
    }
  }
  for (const Binding& b : table) {
    const std::string full = b.section + "." + b.key;
    if (const auto value = tree.get_optional<std::string>(pt::ptree::path_type(full, '.'))) {
      b.set(full, *value);
    }
    const auto it = env.find("BNLS_" + upper(b.section) + "_" + upper(b.key));
    if (it != env.end()) {
      b.set(it->first, it->second);
    }
  }
  validate(config);
  config.problem.c_gn = config.constants.c_gn;
  config.problem.s_sob = config.constants.s_sob;
  return config;
}

LandscapeParams resolve_constants(const Config& config) {
  LandscapeParams params = config.problem;
  if (config.constants.mode == ConstantsMode::Estimated) {
    const GridPtr grid = build_grid(params.dim, config.solver.grid_n, config.solver.r_max);
    params.c_gn = static_cast<double>(estimate_gn_constant(params, grid, params.q).value);
    const GridPtr wide = build_grid(params.dim, config.constants.sobolev_n,
                                    config.constants.sobolev_r_max);
    params.s_sob = static_cast<double>(estimate_sobolev_constant(params, wide).value);
  }
  return params;
}

std::string_view mode_name(ConstantsMode mode) {
  return mode == ConstantsMode::Synthetic ? "synthetic" : "estimated";
}

std::string_view spacing_name(SweepSpacing spacing) {
  return spacing == SweepSpacing::Multiples ? "multiples" : "log";
}

}  // namespace bnls
