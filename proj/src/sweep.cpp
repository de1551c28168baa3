#include "bnls/sweep.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "bnls/functionals.hpp"

namespace bnls {

Real subhomogeneity_margin(Real m_alpha, Real m_theta_alpha, Real theta) {
  return m_theta_alpha - theta * m_alpha;
}

SweepFlags evaluate_flags(const std::vector<double>& c, const std::vector<Real>& m,
                          const SweepSettings& settings) {
  if (c.size() != m.size()) {
    throw Error(ErrorKind::LengthMismatch, "sweep arrays differ in length");
  }
  SweepFlags flags;
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < n; ++i) {
    if (!(m[i] < 0)) {
      flags.all_negative = false;
      flags.nonnegative.push_back(i);
    }
    if (i + 1 < n && !(m[i + 1] < m[i] - settings.monotone_tol * std::abs(m[i]))) {
      flags.monotone_decreasing = false;
      flags.monotone_violations.push_back(i);
    }
  }
  const Real tol = settings.subadditivity_tol;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (std::abs(c[i] + c[j] - c[k]) > 1e-12 * c[k]) {
          continue;
        }
        const TripleCheck t{i, j, k, m[k] - m[i] - m[j]};
        ++flags.triples_checked;
        if (!flags.worst_triple || t.margin > flags.worst_triple->margin) {
          flags.worst_triple = t;
        }
        if (t.margin > tol) {
          flags.subadditivity_violations.push_back(t);
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Real theta = static_cast<Real>(c[j]) / c[i];
      const PairCheck p{i, j, theta, subhomogeneity_margin(m[i], m[j], theta)};
      ++flags.pairs_checked;
      if (!flags.worst_pair || p.margin > flags.worst_pair->margin) {
        flags.worst_pair = p;
      }
      if (p.margin > tol) {
        flags.subhomogeneity_violations.push_back(p);
      }
    }
  }
  return flags;
}

std::vector<double> sweep_masses(const SweepSettings& settings, double c0) {
  std::vector<double> c(settings.k);
  const double lo = settings.c_min_frac * c0;
  const double hi = settings.c_max_frac * c0;
  for (int i = 0; i < settings.k; ++i) {
    if (settings.spacing == SweepSpacing::Multiples) {
      c[i] = hi * (i + 1) / settings.k;
    } else {
      c[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (settings.k - 1));
    }
  }
  if (c.front() < lo) {
    throw Error(ErrorKind::ParameterOutOfRange,
                "sweep: multiples spacing puts c_1 below c_min_frac c0; lower k or "
                "c_min_frac");
  }
  return c;
}

std::vector<BoundarySample> sample_boundary(const LandscapeParams& params,
                                            const SolverConfig& grid_settings,
                                            int count, std::uint64_t seed,
                                            double c_lo_frac, double c_hi_frac) {
  validate(params);
  const MassThreshold threshold = mass_threshold(params);
  const Real rho0 = threshold.rho0;
  boost::random::mt19937_64 rng(seed);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  boost::random::uniform_int_distribution<int> terms(1, 3);

  std::vector<BoundarySample> out;
  out.reserve(count);
  for (int sample = 0; sample < count; ++sample) {
    const double c = threshold.c0 * (c_lo_frac + (c_hi_frac - c_lo_frac) * unit(rng));
    const int k = terms(rng);
    std::vector<Real> amp(k), width(k);
    for (int t = 0; t < k; ++t) {
      amp[t] = t == 0 ? 0.5 + 0.5 * unit(rng) : 2 * unit(rng) - 1;
      width[t] = 0.5 + 1.5 * unit(rng);
    }
    auto build = [&](const GridPtr& grid) {
      return RadialField::sample(grid, [&](Real r) {
        Real v = 0;
        for (int t = 0; t < k; ++t) {
          v += amp[t] * std::exp(-r * r / (2 * width[t] * width[t]));
        }
        return v;
      });
    };
    const Real widest = *std::max_element(width.begin(), width.end());
    const GridPtr probe = build_grid(params.dim, grid_settings.grid_n,
                                     std::max<double>(grid_settings.r_max, 12 * widest));
    const NormBundle raw = norm_bundle(params, build(probe));
    // amplitude t fixes the mass, then s with s^2 t^2 A = rho0 fixes the bend
    const Real t = std::sqrt(c / raw.mass);
    const Real s = std::sqrt(rho0 / (t * t * raw.bend));
    const Real gain = t * std::pow(s, static_cast<Real>(params.dim) / 4);
    for (int i = 0; i < k; ++i) {
      amp[i] *= gain;
      width[i] /= std::sqrt(s);
    }
    const Real scaled_widest = widest / std::sqrt(s);
    const GridPtr grid =
        build_grid(params.dim, grid_settings.grid_n,
                   std::max<double>(grid_settings.r_max, 12 * scaled_widest));
    const NormBundle b = norm_bundle(params, build(grid));
    const Real j = energy(params, b);
    const Real bound = rho0 * f_landscape(params, c, static_cast<double>(rho0));
    out.push_back({c, b.mass, b.bend, j, bound, j > 0, j >= bound - 1e-8L});
  }
  return out;
}

SweepReport run_sweep(const LandscapeParams& params, const Config& config) {
  const MassThreshold threshold = mass_threshold(params);
  const std::vector<double> masses = sweep_masses(config.sweep, threshold.c0);
  const int k = static_cast<int>(masses.size());

  std::vector<std::optional<GroundState>> solved(k);
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::mutex failure_lock;
  int failed_index = k;
  std::optional<ErrorKind> failure_kind;
  std::string failure;

  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= k || stop.load()) {
        return;
      }
      try {
        solved[i] = minimize(params, masses[i], config.solver);
      } catch (const Error& e) {
        std::lock_guard<std::mutex> guard(failure_lock);
        stop = true;
        if (i < failed_index) {
          failed_index = i;
          failure_kind = e.kind();
          failure = "c=" + std::to_string(masses[i]) + ": " + e.what();
        }
      }
    }
  };
  const int threads = std::min(config.sweep.threads, k);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (std::thread& t : pool) {
    t.join();
  }

  SweepReport report;
  for (int i = 0; i < k; ++i) {
    if (!solved[i]) {
      continue;
    }
    const GroundState& g = *solved[i];
    report.c.push_back(masses[i]);
    report.m.push_back(g.m);
    report.lambda.push_back(g.lambda);
    report.bend.push_back(g.bend);
    report.q_residual.push_back(g.q_residual);
    report.iters.push_back(g.iters);
  }
  report.flags = evaluate_flags(report.c, report.m, config.sweep);
  report.complete = !failure_kind.has_value();
  report.failure_kind = failure_kind;
  report.failure = failure;
  if (report.complete) {
    const std::vector<BoundarySample> samples =
        sample_boundary(params, config.solver, config.landscape.boundary_samples,
                        config.landscape.seed);
    report.boundary_samples = static_cast<int>(samples.size());
    report.boundary_positive_samples = static_cast<int>(std::count_if(
        samples.begin(), samples.end(), [](const BoundarySample& s) { return s.positive; }));
  }
  return report;
}

}  // namespace bnls
