#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "bnls/report.hpp"
#include "bnls/tables.hpp"

using namespace bnls;
namespace fs = std::filesystem;

namespace {

const fs::path kDefaultConfig = fs::path(BNLS_SOURCE_DIR) / "configs" / "default.ini";

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "bnls_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path path = scratch_dir() / name;
  std::ofstream(path) << body;
  return path;
}

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(BNLS_CLI_PATH) + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe.get()) != nullptr) out += buf.data();
  const int status = pclose(pipe.release());
  return {WEXITSTATUS(status), out};
}

Json last_line(const std::string& out) {
  std::istringstream in(out);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  return Json::parse(last);
}

}  // namespace

TEST_CASE("default config loads") {
  const Config c = load_config(kDefaultConfig, {});
  CHECK(c.problem.dim == 5);
  CHECK(c.problem.q == 3.0);
  CHECK(c.constants.mode == ConstantsMode::Synthetic);
  CHECK(c.solver.grid_n == 2049);
  CHECK(c.sweep.k == 8);
  CHECK(c.sweep.spacing == SweepSpacing::Multiples);
}

TEST_CASE("environment overrides") {
  const Config c = load_config(kDefaultConfig, {{"BNLS_PROBLEM_Q", "2.8"},
                                                {"BNLS_SWEEP_SPACING", "log"},
                                                {"BNLS_CONSTANTS_C_GN", "0.5"}});
  CHECK(c.problem.q == 2.8);
  CHECK(c.sweep.spacing == SweepSpacing::Log);
  CHECK(c.problem.c_gn == 0.5);
}

TEST_CASE("config errors") {
  auto kind_of = [](const fs::path& path, const Environment& env = {}) {
    try {
      load_config(path, env);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::VerificationFailed;
  };
  CHECK(kind_of(scratch_dir() / "absent.ini") == ErrorKind::ConfigNotFound);
  CHECK(kind_of(write_file("unknown.ini", "[problem]\nfoo = 1\n")) == ErrorKind::ConfigParse);
  CHECK(kind_of(write_file("malformed.ini", "[problem]\nq = three\n")) == ErrorKind::ConfigParse);
  CHECK(kind_of(write_file("syntax.ini", "[problem\nq = 3\n")) == ErrorKind::ConfigParse);
  CHECK(kind_of(write_file("mode.ini", "[constants]\nmode = guessed\n")) == ErrorKind::ConfigParse);
  CHECK(kind_of(write_file("range.ini", "[problem]\nN = 5\nq = 3.7\n")) ==
        ErrorKind::ParameterOutOfRange);
  CHECK(kind_of(kDefaultConfig, {{"BNLS_SWEEP_K", "3"}}) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of(kDefaultConfig, {{"BNLS_GRID_N", "x"}}) == ErrorKind::ConfigParse);
}

TEST_CASE("sweep masses") {
  SweepSettings s;
  const std::vector<double> m = sweep_masses(s, 2.0);
  REQUIRE(m.size() == 8);
  CHECK(m.back() == doctest::Approx(1.9));
  CHECK(m[1] == doctest::Approx(2 * m[0]));
  s.spacing = SweepSpacing::Log;
  const std::vector<double> l = sweep_masses(s, 2.0);
  CHECK(l.front() == doctest::Approx(0.1));
  CHECK(l.back() == doctest::Approx(1.9));
  CHECK(l[1] / l[0] == doctest::Approx(l[7] / l[6]));
  s.spacing = SweepSpacing::Multiples;
  s.k = 30;
  CHECK_THROWS_AS(sweep_masses(s, 2.0), Error);
}

TEST_CASE("sweep flags from arrays") {
  const SweepSettings s;
  const std::vector<double> c{1, 2, 3, 4};
  // m(c) = -c^2 is strictly decreasing, negative and strictly subadditive
  std::vector<Real> m{-1, -4, -9, -16};
  SweepFlags f = evaluate_flags(c, m, s);
  CHECK(f.monotone_decreasing);
  CHECK(f.all_negative);
  CHECK(f.triples_checked == 4);  // 1+1=2, 1+2=3, 1+3=4, 2+2=4
  CHECK(f.subadditivity_violations.empty());
  CHECK(f.pairs_checked == 6);
  CHECK(f.subhomogeneity_violations.empty());

  m = {-1, -4, -3.5, -16};
  f = evaluate_flags(c, m, s);
  CHECK_FALSE(f.monotone_decreasing);
  CHECK(f.monotone_violations == std::vector<int>{1});

  m = {-1, -1.5, -2, 0.5};
  f = evaluate_flags(c, m, s);
  CHECK_FALSE(f.all_negative);
  CHECK(f.nonnegative == std::vector<int>{3});
  CHECK_FALSE(f.subadditivity_violations.empty());
  CHECK_FALSE(f.subhomogeneity_violations.empty());

  CHECK(subhomogeneity_margin(-3, -3, 1) == 0);
  CHECK_THROWS_AS(evaluate_flags(c, {-1, -2}, s), Error);
}

TEST_CASE("peak table") {
  const LandscapeParams p{5, 3.0, 1.0, 1.0, 1.0};
  const std::vector<PeakRow> rows = peak_table(p, 41);
  REQUIRE(rows.size() == 40);
  CHECK(std::abs(rows.back().h) < 1e-10);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) CHECK(rows[i].h > 0);
  std::ostringstream out;
  write_peak_csv(out, mass_threshold(p), rows);
  CHECK(out.str().find("c,rho_c,h_c\n") != std::string::npos);
}

TEST_CASE("boundary samples are positive") {
  const LandscapeParams p{5, 3.0, 1.0, 1.0, 1.0};
  const MassThreshold t = mass_threshold(p);
  const std::vector<BoundarySample> s = sample_boundary(p, SolverConfig{}, 100, 4242);
  REQUIRE(s.size() == 100);
  for (const BoundarySample& b : s) {
    CHECK(b.positive);
    CHECK(b.bound_holds);
    CHECK(std::abs(b.mass / b.c - 1) < 1e-10);
    CHECK(std::abs(b.bend / t.rho0 - 1) < 1e-6);
  }
  // reproducible from the seed
  const std::vector<BoundarySample> again = sample_boundary(p, SolverConfig{}, 100, 4242);
  CHECK(again.back().energy == s.back().energy);
}

TEST_CASE("verify suite") {
  const Config c = load_config(kDefaultConfig, {});
  for (const CheckResult& r : run_verify(c, resolve_constants(c))) {
    CHECK_MESSAGE(r.pass, r.name << ": " << r.detail);
  }
  const Config coarse = load_config(kDefaultConfig, {{"BNLS_GRID_N", "8"}});
  bool named = false;
  for (const CheckResult& r : run_verify(coarse, resolve_constants(coarse))) {
    if (r.name == "laplacian-order") named = !r.pass;
  }
  CHECK(named);
}

TEST_CASE("cli: missing config and bad mass") {
  Run r = run_cli("solve --config " + (scratch_dir() / "absent.ini").string() + " --c 0.5");
  CHECK(r.code == 2);
  CHECK(last_line(r.out)["error"] == "config-not-found");

  r = run_cli("solve --config " + kDefaultConfig.string() + " --c 5");
  CHECK(r.code == 3);
  const Json e = last_line(r.out);
  CHECK(e["error"] == "mass-above-threshold");
  CHECK(e["message"].get<std::string>().find("1.31022") != std::string::npos);

  r = run_cli("verify");
  CHECK(r.code == 2);
}

TEST_CASE("cli: solve then fiber") {
  const fs::path field = scratch_dir() / "gs.csv";
  const double c0 = mass_threshold(LandscapeParams{}).c0;
  std::ostringstream args;
  args.precision(17);
  args << "solve --config " << kDefaultConfig.string() << " --c " << c0 / 2
       << " --field-out " << field.string();
  Run r = run_cli(args.str());
  REQUIRE(r.code == 0);
  const Json g = last_line(r.out);
  CHECK(g["m"].get<double>() < 0);
  CHECK(g["q_residual"].get<double>() < 1e-6);
  CHECK(g["bend"].get<double>() < g["rho0"].get<double>());

  r = run_cli("fiber --config " + kDefaultConfig.string() + " --field " + field.string());
  REQUIRE(r.code == 0);
  const Json f = last_line(r.out);
  CHECK(std::abs(f["s1"].get<double>() - 1) < 1e-3);
  CHECK(f["kind1"] == "local-minimum");
}

TEST_CASE("cli: verify exit codes") {
  Run r = run_cli("verify --config " + kDefaultConfig.string());
  CHECK(r.code == 0);
  CHECK(last_line(r.out)["pass"] == true);

  r = run_cli("verify --config " + write_file("q37.ini", "[problem]\nN = 5\nq = 3.7\n").string());
  CHECK(r.code == 3);
  CHECK(last_line(r.out)["error"] == "parameter-out-of-range");
  CHECK(r.out.find("\"check\"") == std::string::npos);

  r = run_cli("verify --config " + write_file("coarse.ini", "[grid]\nn = 8\n").string());
  CHECK(r.code == 5);
  const Json summary = last_line(r.out);
  bool named = false;
  for (const auto& name : summary["failed"]) named = named || name == "laplacian-order";
  CHECK(named);
}

TEST_CASE("cli: landscape and sweep") {
  const fs::path dir = scratch_dir() / "tables";
  Run r = run_cli("landscape --config " + kDefaultConfig.string() + " --out-dir " + dir.string());
  REQUIRE(r.code == 0);
  const Json l = last_line(r.out);
  CHECK(std::abs(l["h_at_c0"].get<double>()) < 1e-10);
  CHECK(l["peaks_positive_below_c0"] == true);
  CHECK(l["boundary_positive"] == 100);
  CHECK(fs::exists(dir / "peak.csv"));
  CHECK(fs::exists(dir / "landscape.csv"));
  CHECK(fs::exists(dir / "boundary.csv"));

  const fs::path report = scratch_dir() / "sweep.json";
  r = run_cli("sweep --config " + kDefaultConfig.string() + " --out " + report.string());
  CHECK(r.code == 0);
  const Json s = last_line(r.out);
  CHECK(s["flags"]["monotone_decreasing"] == true);
  CHECK(s["flags"]["triples_checked"].get<int>() > 0);
  std::ifstream in(report);
  CHECK(Json::parse(in)["c"].size() == 8);
}
