#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "bnls/config.hpp"
#include "bnls/report.hpp"
#include "bnls/tables.hpp"

namespace fs = std::filesystem;
using namespace bnls;

namespace {

void emit(const Json& record) { std::cout << record.dump() << '\n'; }

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::FieldFormat, "cannot write " + path.string());
  }
  return out;
}

int run_constants(const Config& config) {
  LandscapeParams params = config.problem;
  const GridPtr grid = build_grid(params.dim, config.solver.grid_n, config.solver.r_max);
  const ConstantEstimate gn = estimate_gn_constant(params, grid, params.q);
  const GridPtr wide = build_grid(params.dim, config.constants.sobolev_n,
                                  config.constants.sobolev_r_max);
  const ConstantEstimate sob = estimate_sobolev_constant(params, wide);
  const RadialField gauss =
      RadialField::sample(grid, [](Real r) { return std::exp(-r * r / 2); });
  if (config.constants.mode == ConstantsMode::Estimated) {
    params.c_gn = static_cast<double>(gn.value);
    params.s_sob = static_cast<double>(sob.value);
  }
  emit({{"record", "constants"},
        {"mode", std::string(mode_name(config.constants.mode))},
        {"params", to_json(params)},
        {"threshold", to_json(mass_threshold(params))},
        {"estimates",
         {{"C_gn", {{"value", static_cast<double>(gn.value)}, {"iterations", gn.iterations},
                    {"gaussian_quotient", static_cast<double>(gn_quotient(gauss, params.q))}}},
          {"S_sob", {{"value", static_cast<double>(sob.value)}, {"evaluations", sob.iterations},
                     {"grid", {{"n", wide->size()}, {"r_max", wide->r_max()}}}}}}}});
  return 0;
}

int run_landscape(const Config& config, const fs::path& out_dir) {
  const LandscapeParams params = resolve_constants(config);
  const MassThreshold t = mass_threshold(params);
  const std::vector<PeakRow> peaks = peak_table(params, config.landscape.c_points);
  const std::vector<LandscapeRow> grid = landscape_table(params, config.landscape);
  const std::vector<BoundarySample> samples =
      sample_boundary(params, config.solver, config.landscape.boundary_samples,
                      config.landscape.seed);
  auto peak_out = open_output(out_dir / "peak.csv");
  write_peak_csv(peak_out, t, peaks);
  auto grid_out = open_output(out_dir / "landscape.csv");
  write_landscape_csv(grid_out, t, grid);
  auto boundary_out = open_output(out_dir / "boundary.csv");
  write_boundary_csv(boundary_out, t, samples);

  bool peaks_positive = true;
  for (const PeakRow& r : peaks) {
    if (r.c < t.c0) peaks_positive = peaks_positive && r.h > 0;
  }
  int positive = 0;
  int bound_holds = 0;
  for (const BoundarySample& s : samples) {
    positive += s.positive;
    bound_holds += s.bound_holds;
  }
  emit({{"record", "landscape"},
        {"params", to_json(params)},
        {"threshold", to_json(t)},
        {"h_at_c0", peaks.back().h},
        {"peaks_positive_below_c0", peaks_positive},
        {"boundary_samples", samples.size()},
        {"boundary_positive", positive},
        {"boundary_bound_holds", bound_holds},
        {"tables", {(out_dir / "peak.csv").string(), (out_dir / "landscape.csv").string(),
                    (out_dir / "boundary.csv").string()}}});
  return 0;
}

int run_solve(const Config& config, double c, const fs::path& field_out) {
  const LandscapeParams params = resolve_constants(config);
  const GroundState g = minimize(params, c, config.solver);
  const NormBundle b = norm_bundle(params, g.field);
  const FiberAnalysis fiber = analyze_fiber(params, b);
  save_field_csv(g.field, field_out);
  Json record = to_json(g);
  record["mass"] = static_cast<double>(b.mass);
  record["fiber_s1"] = fiber.s1 ? Json(static_cast<double>(*fiber.s1)) : Json(nullptr);
  record["field"] = field_out.string();
  Json out = {{"record", "ground_state"}, {"params", to_json(params)}};
  out.update(record);
  emit(out);
  return 0;
}

int run_sweep_command(const Config& config, const fs::path& report_path) {
  const LandscapeParams params = resolve_constants(config);
  const SweepReport report = run_sweep(params, config);
  Json out = {{"record", "sweep"},
              {"params", to_json(params)},
              {"threshold", to_json(mass_threshold(params))},
              {"spacing", std::string(spacing_name(config.sweep.spacing))}};
  out.update(to_json(report));
  {
    auto file = open_output(report_path);
    file << out.dump(2) << '\n';
  }
  emit(out);
  if (report.failure_kind) {
    return exit_code(*report.failure_kind);
  }
  const SweepFlags& f = report.flags;
  const bool pass = f.monotone_decreasing && f.all_negative &&
                    f.subadditivity_violations.empty() &&
                    f.subhomogeneity_violations.empty() &&
                    report.boundary_positive_samples == report.boundary_samples;
  return pass ? 0 : exit_code(ErrorKind::VerificationFailed);
}

int run_fiber(const Config& config, const fs::path& path) {
  const LandscapeParams params = resolve_constants(config);
  const FieldHeader h = read_field_header(path);
  if (h.dim != params.dim) {
    throw Error(ErrorKind::GridMismatch, "field dimension " + std::to_string(h.dim) +
                                             " differs from problem N");
  }
  const RadialField field = load_field_csv(path, build_grid(h.dim, h.n, h.r_max));
  const NormBundle b = norm_bundle(params, field);
  Json out = {{"record", "fiber"}, {"bundle", to_json(b)}};
  out.update(to_json(analyze_fiber(params, b)));
  emit(out);
  return 0;
}

int run_verify_command(const Config& config) {
  validate(config.problem);
  const LandscapeParams params = resolve_constants(config);
  bool all = true;
  std::vector<std::string> failed;
  for (const CheckResult& c : run_verify(config, params)) {
    Json line = {{"record", "check"}};
    line.update(to_json(c));
    emit(line);
    all = all && c.pass;
    if (!c.pass) failed.push_back(c.name);
  }
  emit({{"record", "verify"}, {"pass", all}, {"failed", failed}});
  return all ? 0 : exit_code(ErrorKind::VerificationFailed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normalized ground states of the biharmonic NLS with combined nonlinearity"};
  app.require_subcommand(1);
  std::string config_path;
  double c = 0;
  std::string field_out = "ground_state.csv";
  std::string field_in;
  std::string out_dir = ".";
  std::string report_path = "sweep_report.json";

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "INI configuration file")->required();
    return sub;
  };
  add("constants", "estimate the GN and Sobolev constants");
  add("landscape", "write the landscape tables and boundary samples")
      ->add_option("--out-dir", out_dir, "directory for the CSV tables");
  CLI::App* solve = add("solve", "minimize at one mass");
  solve->add_option("--c", c, "mass c in (0, c0)")->required();
  solve->add_option("--field-out", field_out, "CSV path for the converged field");
  add("sweep", "solve over a mass grid and check the energy inequalities")
      ->add_option("--out", report_path, "JSON report path");
  add("fiber", "fiber analysis of a saved field")
      ->add_option("--field", field_in, "field CSV")
      ->required();
  add("verify", "run the property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(error_record(ErrorKind::ConfigParse, e.what()));
    return exit_code(ErrorKind::ConfigParse);
  }

  try {
    const Config config = load_config(config_path, process_environment());
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "constants") return run_constants(config);
    if (name == "landscape") return run_landscape(config, out_dir);
    if (name == "solve") return run_solve(config, c, field_out);
    if (name == "sweep") return run_sweep_command(config, report_path);
    if (name == "fiber") return run_fiber(config, field_in);
    return run_verify_command(config);
  } catch (const Error& e) {
    emit(error_record(e.kind(), e.what()));
    return exit_code(e.kind());
  }
}
