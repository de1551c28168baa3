#include <doctest.h>

#include <cmath>
#include <random>

#include "bnls/error.hpp"
#include "bnls/fiber.hpp"
#include "bnls/landscape.hpp"
#include "oracles.hpp"

using namespace bnls;

namespace {

const LandscapeParams kSynthetic{5, 3.0, 1.0, 1.0, 1.0};
const NormBundle kUnit{1, 1, 1, 1};

}  // namespace

TEST_CASE("psi values") {
  CHECK(static_cast<double>(psi(kSynthetic, kUnit, 1)) == doctest::Approx(1.0 / 15).epsilon(1e-15));
  CHECK(static_cast<double>(psi(kSynthetic, kUnit, 2)) ==
        doctest::Approx(-101.192804743335).epsilon(1e-14));
  // psi -> 0- as s -> 0+
  for (Real s : {1e-2L, 1e-4L, 1e-8L}) {
    CHECK(psi(kSynthetic, kUnit, s) < 0);
  }
  CHECK(std::abs(psi(kSynthetic, kUnit, 1e-8L)) < 1e-9);
  CHECK_THROWS_AS(psi(kSynthetic, kUnit, 0), Error);
  CHECK_THROWS_AS(psi_prime(kSynthetic, kUnit, -1), Error);
}

TEST_CASE("psi' values and central differences") {
  CHECK(static_cast<double>(psi_prime(kSynthetic, kUnit, 1)) ==
        doctest::Approx(-5.0 / 12).epsilon(1e-15));
  for (Real s : {0.2L, 0.7L, 1.0L, 1.4L}) {
    const Real eps = 1e-6L * s;
    const Real fd = (psi(kSynthetic, kUnit, s + eps) - psi(kSynthetic, kUnit, s - eps)) / (2 * eps);
    const Real exact = psi_prime(kSynthetic, kUnit, s);
    CHECK(std::abs(fd - exact) / std::abs(exact) < 1e-8);
  }
}

TEST_CASE("without the critical term psi' has one zero") {
  const NormBundle b{1, 1, 1, 0};
  const Real expected = std::pow(5.0L / 12, 4.0L / 3);
  CHECK(static_cast<double>(expected) == doctest::Approx(0.311208662955359).epsilon(1e-13));
  const oracle::LReal root =
      oracle::bisect([&](oracle::LReal s) { return psi_prime(kSynthetic, b, s); }, 1e-3L, 10.0L);
  CHECK(oracle::rel(root, expected) < 1e-12);
  CHECK(psi_prime_sign_changes(kSynthetic, b, 1e-6L, 1e6L, 2000) == 1);
  CHECK_FALSE(xi_turning_point(kSynthetic, b).has_value());
  CHECK_THROWS_AS(analyze_fiber(kSynthetic, b), Error);
}

TEST_CASE("turning point of xi") {
  const auto s = xi_turning_point(kSynthetic, kUnit);
  REQUIRE(s.has_value());
  CHECK(static_cast<double>(*s) == doctest::Approx(0.690332451935450).epsilon(1e-13));
  const oracle::LReal root =
      oracle::bisect([&](oracle::LReal x) { return xi_prime(kSynthetic, kUnit, x); }, 0.1L, 2.0L);
  CHECK(oracle::rel(*s, root) < 1e-12);
  // xi' does not involve A
  const auto shifted = xi_turning_point(kSynthetic, NormBundle{1, 7, 1, 1});
  CHECK(std::abs(*shifted - *s) < 1e-15);
}

TEST_CASE("two zeros for the unit bundle") {
  const FiberAnalysis a = analyze_fiber(kSynthetic, kUnit);
  CHECK(static_cast<double>(a.xi_at_turn) == doctest::Approx(0.398254145486644).epsilon(1e-12));
  REQUIRE(a.s1.has_value());
  REQUIRE(a.s2.has_value());
  CHECK(oracle::rel(*a.s1, 0.311245210352652L) < 1e-9);
  CHECK(oracle::rel(*a.s2, 0.930099686033752L) < 1e-9);
  CHECK(*a.s1 < a.s_turn);
  CHECK(a.s_turn < *a.s2);
  CHECK(*a.kind1 == CriticalKind::LocalMinimum);
  CHECK(*a.kind2 == CriticalKind::LocalMaximum);
  CHECK(*a.psi_at_s1 < 0);
  CHECK(kind_name(CriticalKind::LocalMinimum) == "local-minimum");
}

TEST_CASE("no zeros when xi(s*) < 0") {
  const NormBundle b{1, 0.1L, 1, 1};
  const FiberAnalysis a = analyze_fiber(kSynthetic, b);
  CHECK(a.xi_at_turn < 0);
  CHECK_FALSE(a.s1.has_value());
  CHECK_FALSE(a.s2.has_value());
  CHECK(psi_prime_sign_changes(kSynthetic, b, 1e-6L, 1e6L, 4000) == 0);
}

TEST_CASE("tangency is reported as a double zero") {
  // choose A so that xi(s*) = 0 exactly: A = k B s*^{gamma-2} + C s*^{p-2}
  const NormBundle probe{1, 1, 1, 1};
  const Real s = *xi_turning_point(kSynthetic, probe);
  const Real a = 1 - xi(kSynthetic, probe, s);
  const FiberAnalysis t = analyze_fiber(kSynthetic, NormBundle{1, a, 1, 1});
  REQUIRE(t.s1.has_value());
  CHECK(*t.kind1 == CriticalKind::DegenerateTangency);
  CHECK(*t.s1 == *t.s2);
  CHECK(std::abs(*t.s1 - s) < 1e-12);
}

TEST_CASE("at most two sign changes on random bundles") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const NormBundle b{1, std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))};
    const int changes = psi_prime_sign_changes(kSynthetic, b, 1e-10L, 1e10L, 4000);
    CHECK(changes <= 2);
    const FiberAnalysis a = analyze_fiber(kSynthetic, b);
    if (a.s1 && a.s2 && *a.s1 != *a.s2) {
      CHECK(*a.s1 < a.s_turn);
      CHECK(a.s_turn < *a.s2);
      CHECK(std::abs(psi_prime(kSynthetic, b, *a.s1)) <=
            1e-8L * (b.bend * *a.s1 + b.subcrit + b.crit));
      CHECK(changes == 2);
    }
  }
}
