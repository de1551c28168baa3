#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bnls/error.hpp"
#include "bnls/fiber.hpp"
#include "bnls/functionals.hpp"

using namespace bnls;

namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;
const LandscapeParams kSynthetic{5, 3.0, 1.0, 1.0, 1.0};

RadialField mixture(const GridPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Real amp[3], width[3];
  for (int k = 0; k < 3; ++k) {
    amp[k] = 2 * u(rng) - 1;
    width[k] = 0.6 + 1.4 * u(rng);
  }
  return RadialField::sample(g, [&](Real r) {
    Real v = 0;
    for (int k = 0; k < 3; ++k) v += amp[k] * std::exp(-r * r / (2 * width[k] * width[k]));
    return v;
  });
}

}  // namespace

TEST_CASE("norm bundle of the zero field and of a Gaussian") {
  const GridPtr g = build_grid(5, 2049, 12.0);
  const NormBundle zero = norm_bundle(kSynthetic, RadialField::zero(g));
  CHECK(zero.mass == 0);
  CHECK(zero.bend == 0);
  CHECK(zero.subcrit == 0);
  CHECK(zero.crit == 0);

  const RadialField u = RadialField::sample(g, [](Real r) { return std::exp(-r * r / 2); });
  const NormBundle b = norm_bundle(kSynthetic, u);
  CHECK(std::abs(b.mass / std::pow(kPi, 2.5L) - 1) < 1e-8);
  CHECK(std::abs(b.bend / (8.75L * std::pow(kPi, 2.5L)) - 1) < 1e-8);
  // int e^{-3r^2/2} dx = (2 pi / 3)^{5/2}
  CHECK(std::abs(b.subcrit / std::pow(2 * kPi / 3, 2.5L) - 1) < 1e-8);
  CHECK(std::abs(b.subcrit - 6.34814055699739L) < 1e-8);
  // |u|^10 = e^{-5 r^2}: (pi / 5)^{5/2}
  CHECK(std::abs(b.crit / std::pow(kPi / 5, 2.5L) - 1) < 1e-8);
}

TEST_CASE("bundle homogeneity") {
  const GridPtr g = build_grid(5, 1025, 12.0);
  std::mt19937_64 rng(3);
  const RadialField u = mixture(g, rng);
  const NormBundle b = norm_bundle(kSynthetic, u);
  const Real t = 1.7L;
  const NormBundle bt = norm_bundle(kSynthetic, RadialField(g, Vector(t * u.values())));
  CHECK(std::abs(bt.mass / (t * t * b.mass) - 1) < 1e-14);
  CHECK(std::abs(bt.bend / (t * t * b.bend) - 1) < 1e-14);
  CHECK(std::abs(bt.subcrit / (std::pow(t, 3) * b.subcrit) - 1) < 1e-14);
  CHECK(std::abs(bt.crit / (std::pow(t, 10) * b.crit) - 1) < 1e-14);
}

TEST_CASE("energy, Pohozaev functional and multiplier from bundles") {
  const NormBundle unit{1, 1, 1, 1};
  CHECK(static_cast<double>(energy(kSynthetic, unit)) == doctest::Approx(1.0 / 15).epsilon(1e-15));
  CHECK(energy(kSynthetic, NormBundle{}) == 0);
  CHECK(static_cast<double>(pohozaev(kSynthetic, unit)) == doctest::Approx(-5.0 / 12).epsilon(1e-15));
  CHECK(pohozaev(kSynthetic, NormBundle{}) == 0);
  CHECK(static_cast<double>(lagrange_multiplier(kSynthetic, unit)) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(lagrange_multiplier(kSynthetic, NormBundle{2, 3, 0, 0}) == doctest::Approx(1.5));
  CHECK_THROWS_AS(lagrange_multiplier(kSynthetic, NormBundle{}), Error);
}

TEST_CASE("Pohozaev functional equals psi'(1)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int i = 0; i < 200; ++i) {
    const NormBundle b{u(rng), u(rng), u(rng), u(rng)};
    const Real q = pohozaev(kSynthetic, b);
    CHECK(std::abs(q - psi_prime(kSynthetic, b, 1)) <= 1e-15L * (b.bend + b.subcrit + b.crit));
    CHECK(std::abs(energy(kSynthetic, b) - psi(kSynthetic, b, 1)) <= 1e-15L * (b.bend + b.subcrit + b.crit));
  }
}

TEST_CASE("energy of a scaled field matches psi") {
  const GridPtr g = build_grid(5, 2049, 14.0);
  const RadialField u = RadialField::sample(g, [](Real r) { return 0.8L * std::exp(-r * r / 2); });
  const NormBundle b = norm_bundle(kSynthetic, u);
  for (double s : {0.6, 0.9, 1.3, 2.0}) {
    const Real direct = energy(kSynthetic, norm_bundle(kSynthetic, scale_field(u, s)));
    const Real fiber = psi(kSynthetic, b, s);
    CHECK(std::abs(direct - fiber) <= 1e-4L * std::max<Real>(1, std::abs(fiber)));
  }
}

TEST_CASE("l2 gradient against central differences") {
  const GridPtr g = build_grid(5, 1025, 12.0);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const RadialField u = mixture(g, rng);
    const RadialField v = mixture(g, rng);
    const Real eps = 1e-5L;
    auto j = [&](Real t) {
      return energy(kSynthetic,
                    norm_bundle(kSynthetic, RadialField(g, Vector(u.values() + t * v.values()))));
    };
    const Real fd = (j(eps) - j(-eps)) / (2 * eps);
    const Real paired = inner(l2_gradient(kSynthetic, u), v);
    CHECK(std::abs(paired - fd) / std::abs(fd) < 1e-5);
  }
  const RadialField zero = l2_gradient(kSynthetic, RadialField::zero(g));
  CHECK(zero.values().cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("linear part of the gradient is the bilaplacian") {
  // mu = 0 is outside the parameter domain, so the nonlinear part is removed
  // by subtracting it explicitly.
  const GridPtr g = build_grid(5, 2049, 12.0);
  const RadialField u = RadialField::sample(g, [](Real r) { return std::exp(-r * r / 2); });
  const Vector linear =
      l2_gradient(kSynthetic, u).values() + nonlinearity(kSynthetic, u.values());
  // Delta^2 e^{-r^2/2} = (r^4 - 2(N+2) r^2 + N(N+2)) e^{-r^2/2}
  Real worst = 0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    const Real r = g->nodes()[i];
    const Real exact = (r * r * r * r - 14 * r * r + 35) * std::exp(-r * r / 2);
    worst = std::max(worst, std::abs(linear[i] - exact));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("nonlinearity uses sign(u)|u|^{p-1}") {
  LandscapeParams p = kSynthetic;
  p.q = 2.5;
  Vector u(3);
  u << -2, 0, 0.5;
  const Vector n = nonlinearity(p, u);
  CHECK(static_cast<double>(n[0]) == doctest::Approx(-(std::pow(2.0, 1.5) + std::pow(2.0, 9))));
  CHECK(n[1] == 0);
  CHECK(static_cast<double>(n[2]) == doctest::Approx(std::pow(0.5, 1.5) + std::pow(0.5, 9)));
}

TEST_CASE("projected gradient") {
  const GridPtr g = build_grid(5, 1025, 12.0);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const RadialField u = mixture(g, rng);
    const double c = static_cast<double>(inner(u, u));
    const RadialField pg = projected_gradient(kSynthetic, u, c);
    const RadialField raw = l2_gradient(kSynthetic, u);
    CHECK(std::abs(inner(pg, u)) <= 1e-10L * std::sqrt(inner(raw, raw) * inner(u, u)));
  }
  const RadialField u = mixture(g, rng);
  CHECK_THROWS_AS(projected_gradient(kSynthetic, u, 2 * inner(u, u) + 1), Error);
}

TEST_CASE("accurate energy change") {
  const GridPtr g = build_grid(5, 1025, 12.0);
  std::mt19937_64 rng(21);
  const RadialField u = mixture(g, rng);
  const RadialField v = mixture(g, rng);
  // exact directional derivative of the discrete energy:
  // (L v)^T W (L u) - v^T W n(u)
  const SparseMatrix& lap = g->laplacian_matrix();
  const Vector& w = g->weights();
  const Vector lu = lap * u.values();
  const Vector lv = lap * v.values();
  const Real slope = (w.array() * lv.array() * lu.array()).sum() -
                     (w.array() * v.values().array() *
                      nonlinearity(kSynthetic, u.values()).array()).sum();
  for (Real t : {1e-9L, 1e-11L, 1e-13L}) {
    const Real change = energy_change(kSynthetic, u, Vector(t * v.values()));
    CHECK(std::abs(change / (t * slope) - 1) < 1e-7);
  }
  // large steps agree with differencing two energies, up to the summation
  // round-off of the latter
  for (Real t : {1e-1L, 1e-3L}) {
    const Vector step = t * v.values();
    const Real direct =
        energy(kSynthetic, norm_bundle(kSynthetic, RadialField(g, Vector(u.values() + step)))) -
        energy(kSynthetic, norm_bundle(kSynthetic, u));
    CHECK(std::abs(energy_change(kSynthetic, u, step) - direct) <= 1e-13L);
  }
  CHECK_THROWS_AS(energy_change(kSynthetic, u, Vector(Vector::Zero(3))), Error);
}
