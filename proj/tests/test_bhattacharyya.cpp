#include <cmath>
#include <numbers>
#include <vector>

#include "cdt/bhattacharyya.hpp"
#include "cdt/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cdt;
using doctest::Approx;

namespace {

const Distribution u = DiscreteDist({0.5, 0.5});
const Distribution v = DiscreteDist({0.9, 0.1});

DiscreteDist random_dist(Sampler& s, std::size_t n) {
  std::vector<double> m(n);
  double total = 0.0;
  for (double& x : m) total += (x = 0.05 + s.unit());
  for (double& x : m) x /= total;
  return DiscreteDist(m);
}

}  // namespace

TEST_SUITE("bhattacharyya") {
  TEST_CASE("coefficient examples") {
    CHECK(bhat_coefficient(MeanSpec::arithmetic(), 0.3, u, v) == Approx(1.0).epsilon(1e-9));
    const double oracle = oracle::finite_sum(2, [](std::size_t i) {
      const double p[] = {0.5, 0.5};
      const double q[] = {0.9, 0.1};
      return std::sqrt(p[i] * q[i]);
    });
    CHECK(bhat_coefficient(MeanSpec::geometric(), 0.5, u, v) == Approx(oracle).epsilon(1e-12));
    CHECK(bhat_coefficient(MeanSpec::geometric(), 0.5, u, v) == Approx(0.894427).epsilon(1e-6));
    CHECK(bhat_coefficient(MeanSpec::harmonic(), 0.4, v, v) == Approx(1.0));
    CHECK_THROWS_AS(bhat_coefficient(MeanSpec::geometric(), 0.5, u, DensityModel::cauchy(1.0)), Error);
  }

  TEST_CASE("cmbd examples") {
    CHECK(cmbd(MeanSpec::geometric(), MeanSpec::arithmetic(), 0.5, v, v).value == Approx(0.0));
    CHECK(cmbd(MeanSpec::geometric(), MeanSpec::arithmetic(), 0.5, u, v).value == Approx(0.111572).epsilon(1e-6));
    Sampler s(51);
    for (int t = 0; t < 100; ++t) {
      const Distribution p = random_dist(s, 5);
      const Distribution q = random_dist(s, 5);
      const double a = 0.05 + 0.9 * s.unit();
      const double lhs = cmbd(MeanSpec::harmonic(), MeanSpec::geometric(), a, q, p).value;
      const double rhs = cmbd(MeanSpec::harmonic(), MeanSpec::geometric(), 1.0 - a, p, q).value;
      CHECK(std::abs(lhs - rhs) <= 1e-12);
      CHECK(lhs >= 0.0);
    }
  }

  TEST_CASE("cmbd needs dominance") {
    try {
      cmbd(MeanSpec::arithmetic(), MeanSpec::geometric(), 0.5, u, v);
      FAIL("expected DominanceError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Dominance);
    }
    CHECK(known_dominated(MeanSpec::harmonic(), MeanSpec::geometric()));
    CHECK(known_dominated(MeanSpec::power(1.0), MeanSpec::power(2.0)));
    CHECK_FALSE(known_dominated(MeanSpec::power(2.0), MeanSpec::power(1.0)));
    CmbdOptions trusted;
    trusted.trusted_dominance = true;
    CHECK(cmbd(MeanSpec::geometric(), MeanSpec::arithmetic(), 0.5, u, v, trusted).value ==
          Approx(0.111572).epsilon(1e-6));
  }

  TEST_CASE("power cmbd") {
    CHECK(power_cmbd(2.0, 1.0, 0.5, v, v) == Approx(0.0));
    CHECK_THROWS_AS(power_cmbd(1.0, 0.0, 0.5, u, v), Error);
    CHECK_THROWS_AS(power_cmbd(1.0, 1.0, 0.5, u, v), Error);
    const double p[] = {0.5, 0.5};
    const double q[] = {0.9, 0.1};
    auto coeff = [&](double d) {
      return oracle::finite_sum(
          2, [&](std::size_t i) { return std::pow(0.5 * std::pow(p[i], d) + 0.5 * std::pow(q[i], d), 1.0 / d); });
    };
    const double expected = std::log(coeff(2.0) / coeff(1.0)) / (2.0 - 1.0);
    const double value = power_cmbd(2.0, 1.0, 0.5, u, v);
    CHECK(value > 0.0);
    CHECK(value == Approx(expected).epsilon(1e-12));
  }

  TEST_CASE("alpha divergence") {
    CHECK(alpha_divergence(0.3, v, v) == Approx(0.0));
    CHECK(alpha_divergence(0.5, u, v) == Approx(0.422291).epsilon(1e-6));
    Sampler s(52);
    for (int t = 0; t < 50; ++t) {
      const Distribution p = random_dist(s, 4);
      const Distribution q = random_dist(s, 4);
      const double a = 0.05 + 0.9 * s.unit();
      const double c = 1.0 - a * (1.0 - a) * alpha_divergence(a, p, q);
      // Exponent a on p and 1 - a on q.
      const double bhat = cmbd(MeanSpec::geometric(), MeanSpec::arithmetic(), 1.0 - a, p, q).value;
      CHECK(c == Approx(std::exp(-bhat)).epsilon(1e-12));
    }
  }

  TEST_CASE("cauchy closed form") {
    for (double a : {0.1, 0.5, 0.8}) CHECK(cauchy_ha_closed_form(2.0, 2.0, a) == Approx(0.0));
    CHECK(cauchy_ha_closed_form(1.0, 3.0, 0.5) == Approx(-std::log(std::sqrt(3.0) / 2.0)));
    CHECK(cauchy_ha_closed_form(1.0, 3.0, 0.5) == Approx(0.143841).epsilon(1e-5));
    for (double a : {0.25, 0.5, 0.75}) CHECK(cauchy_ha_closed_form(1.5, 4.0, a) == cauchy_ha_closed_form(4.0, 1.5, 1.0 - a));
    CHECK_THROWS_AS(cauchy_ha_closed_form(-1.0, 2.0, 0.5), Error);
  }

  TEST_CASE("cauchy quadrature against simpson oracle") {
    // Plain composite Simpson on a truncated range, with the analytic tail mass.
    const double s1 = 1.0;
    const double s2 = 3.0;
    auto density = [](double s, double x) { return s / (std::numbers::pi * (s * s + x * x)); };
    auto h = [&](double x) { return 2.0 / (1.0 / density(s1, x) + 1.0 / density(s2, x)); };
    const double core = oracle::simpson(h, -2000.0, 2000.0, 400000);
    const double coeff = bhat_coefficient(MeanSpec::harmonic(), 0.5, DensityModel::cauchy(s1), DensityModel::cauchy(s2));
    CHECK(coeff == Approx(core).epsilon(1e-3));
    CHECK(coeff == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-8));
  }

  TEST_CASE("mean gap distance") {
    CHECK(mean_gap_distance(generators::log(), generators::identity(), v, v) == Approx(0.0));
    CHECK(mean_gap_distance(generators::log(), generators::identity(), u, v) == Approx(0.105573).epsilon(1e-6));
    CHECK(mean_gap_distance(generators::log(), generators::identity(), u, v) ==
          mean_gap_distance(generators::log(), generators::identity(), v, u));
    CHECK_THROWS_AS(mean_gap_distance(generators::identity(), generators::log(), u, v), Error);
  }

  TEST_CASE("homogeneity on unnormalized masses") {
    Sampler s(53);
    for (int t = 0; t < 20; ++t) {
      const DiscreteDist p = random_dist(s, 6);
      const DiscreteDist q = random_dist(s, 6);
      const double base = cmbd(MeanSpec::harmonic(), MeanSpec::arithmetic(), 0.3, p, q).value;
      for (double lambda : {0.5, 2.0, 10.0}) {
        std::vector<double> lp = p.masses();
        std::vector<double> lq = q.masses();
        for (double& x : lp) x *= lambda;
        for (double& x : lq) x *= lambda;
        const double scaled =
            cmbd(MeanSpec::harmonic(), MeanSpec::arithmetic(), 0.3, DiscreteDist::unnormalized(lp),
                 DiscreteDist::unnormalized(lq))
                .value;
        CHECK(std::abs(scaled - base) <= 1e-10);
      }
    }
  }

  TEST_CASE("classical bhattacharyya recovered with swapped skew") {
    Sampler s(54);
    for (int t = 0; t < 50; ++t) {
      const DiscreteDist p = random_dist(s, 5);
      const DiscreteDist q = random_dist(s, 5);
      const double a = 0.05 + 0.9 * s.unit();
      double sum = 0.0;
      for (std::size_t i = 0; i < 5; ++i) sum += std::pow(p.masses()[i], 1.0 - a) * std::pow(q.masses()[i], a);
      CHECK(cmbd(MeanSpec::geometric(), MeanSpec::arithmetic(), a, p, q).value == Approx(-std::log(sum)).epsilon(1e-12));
    }
  }

  TEST_CASE("piecewise-constant density matches discrete") {
    const std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
    const DensityModel p = DensityModel::grid(xs, {0.2, 0.5, 0.3});
    const DensityModel q = DensityModel::grid(xs, {0.6, 0.1, 0.3});
    const double continuous = cmbd(MeanSpec::geometric(), MeanSpec::arithmetic(), 0.4, p, q).value;
    const double discrete =
        cmbd(MeanSpec::geometric(), MeanSpec::arithmetic(), 0.4, DiscreteDist({0.2, 0.5, 0.3}), DiscreteDist({0.6, 0.1, 0.3}))
            .value;
    CHECK(std::abs(continuous - discrete) <= 1e-9);
  }

  TEST_CASE("gauss-legendre rule agrees with simpson") {
    QuadratureConfig gl;
    gl.rule = QuadratureRule::GaussLegendre;
    gl.nodes = 40;
    gl.panels = 64;
    const Distribution p = DensityModel::cauchy(1.0, gl);
    const Distribution q = DensityModel::cauchy(2.0, gl);
    const double value = cmbd(MeanSpec::harmonic(), MeanSpec::arithmetic(), 0.5, p, q).value;
    CHECK(value == Approx(cauchy_ha_closed_form(1.0, 2.0, 0.5)).epsilon(1e-6));
  }

  TEST_CASE("distribution parsing") {
    const Distribution d = parse_distribution(R"({"type":"discrete","masses":[0.25,0.75],"values":[1,2]})");
    REQUIRE(std::holds_alternative<DiscreteDist>(d));
    CHECK(std::get<DiscreteDist>(d).values().has_value());
    const Distribution c = parse_distribution(R"({"type":"cauchy","scale":2})");
    REQUIRE(std::holds_alternative<DensityModel>(c));
    CHECK(std::get<DensityModel>(c).cauchy_scale() == 2.0);
    CHECK_THROWS_AS(parse_distribution(R"({"type":"discrete","masses":[0.5,0.6]})"), Error);
    CHECK_THROWS_AS(parse_distribution("{not json"), Error);
  }
}
