#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cdt/error.hpp"
#include "cdt/means.hpp"
#include "doctest.h"

using namespace cdt;
using doctest::Approx;

namespace {

std::vector<MeanSpec> bivariate_corpus() {
  return {MeanSpec::arithmetic(),   MeanSpec::geometric(),        MeanSpec::harmonic(),
          MeanSpec::power(2.0),     MeanSpec::power(-1.5),        MeanSpec::lehmer(1.0),
          MeanSpec::lehmer(-0.5),   MeanSpec::gini(1.0, 2.0),     MeanSpec::gini(1.5, 1.5),
          MeanSpec::lagrange(generators::log()),                   MeanSpec::lagrange(generators::exp()),
          MeanSpec::cauchy(generators::power(2.0), generators::identity()),
          MeanSpec::stolarsky(0.0), MeanSpec::stolarsky(1.0),     MeanSpec::stolarsky(3.0),
          MeanSpec::dual(MeanSpec::arithmetic()),                  MeanSpec::dual(MeanSpec::power(2.0))};
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_SUITE("means") {
  TEST_CASE("weighted mean examples") {
    const std::vector<double> half{0.5, 0.5};
    CHECK(weighted_mean(MeanSpec::geometric(), std::vector<double>{1, 4}, half) == Approx(2.0));
    CHECK(weighted_mean(MeanSpec::harmonic(), std::vector<double>{2, 6}, half) == Approx(3.0));
    CHECK(weighted_mean(MeanSpec::power(2.0), std::vector<double>{3, 4}, half) == Approx(3.535533906).epsilon(1e-9));
    CHECK(weighted_mean(MeanSpec::lehmer(1.0), std::vector<double>{3, 6}, half) == Approx(5.0));
  }

  TEST_CASE("power mean matches the direct definition") {
    Sampler s(21);
    for (int t = 0; t < 200; ++t) {
      const double x = s.uniform(0.1, 10.0);
      const double y = s.uniform(0.1, 10.0);
      const double a = s.unit();
      const double d = s.uniform(-3.0, 3.0);
      if (std::abs(d) < 1e-3) continue;
      const double direct = std::pow((1 - a) * std::pow(x, d) + a * std::pow(y, d), 1.0 / d);
      CHECK(barycenter(MeanSpec::power(d), x, y, a) == Approx(direct).epsilon(1e-12));
    }
  }

  TEST_CASE("weighted mean rejects bad input") {
    CHECK_THROWS_AS(weighted_mean(MeanSpec::arithmetic(), std::vector<double>{1, 2}, std::vector<double>{0.5, 0.6}),
                    Error);
    CHECK_THROWS_AS(weighted_mean(MeanSpec::arithmetic(), std::vector<double>{1, 2}, std::vector<double>{1.0, 0.0}),
                    Error);
    CHECK_THROWS_AS(weighted_mean(MeanSpec::geometric(), std::vector<double>{-1, 2}, std::vector<double>{0.5, 0.5}),
                    Error);
    CHECK_THROWS_AS(weighted_mean(MeanSpec::stolarsky(2.0), std::vector<double>{1, 2, 3},
                                  std::vector<double>{0.2, 0.3, 0.5}),
                    Error);
    try {
      weighted_mean(MeanSpec::arithmetic(), std::vector<double>{1, 2}, std::vector<double>{0.5, 0.6});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Weight);
    }
  }

  TEST_CASE("lagrange mean") {
    CHECK(lagrange_mean(generators::log(), 1.0, std::numbers::e) == Approx(std::numbers::e - 1.0).epsilon(1e-9));
    CHECK(lagrange_mean(generators::log(), 2.5, 2.5) == 2.5);
    Sampler s(22);
    for (int t = 0; t < 1000; ++t) {
      const double p = s.uniform(0.1, 10.0);
      const double q = s.uniform(0.1, 10.0);
      const double l = lagrange_mean(generators::log(), p, q);
      CHECK(mean(MeanSpec::geometric(), p, q) <= l * (1 + 1e-12));
      CHECK(l <= mean(MeanSpec::arithmetic(), p, q) * (1 + 1e-12));
    }
  }

  TEST_CASE("cauchy mean") {
    const Generator sq = generators::power(2.0);
    const Generator id = generators::identity();
    CHECK(cauchy_mean(sq, id, 2.0, 6.0) == Approx(4.0).epsilon(1e-10));
    CHECK(cauchy_mean(sq, id, 3.0, 3.0) == 3.0);
    // C_{f,g}(p, q) = L_{f o g^-1}(g p, g q) with f = x^2, g = log: f o g^-1 = e^{2u}.
    const Generator lg = generators::log();
    const Generator e2("exp2", Interval::real_line(), [](double u) { return std::exp(2 * u); },
                       [](double v) { return 0.5 * std::log(v); }, [](double u) { return 2 * std::exp(2 * u); });
    Sampler s(23);
    for (int t = 0; t < 200; ++t) {
      const double p = s.uniform(0.2, 5.0);
      const double q = s.uniform(0.2, 5.0);
      if (std::abs(p - q) < 1e-3) continue;
      const double c = cauchy_mean(sq, lg, p, q);
      const double l = std::exp(lagrange_mean(e2, std::log(p), std::log(q)));
      CHECK(c == Approx(l).epsilon(1e-9));
    }
  }

  TEST_CASE("stolarsky mean") {
    Sampler s(24);
    for (int t = 0; t < 100; ++t) {
      const double x = s.uniform(0.1, 10.0);
      const double y = s.uniform(0.1, 10.0);
      CHECK(stolarsky_mean(2.0, x, y) == Approx(0.5 * (x + y)).epsilon(1e-12));
      CHECK(stolarsky_mean(-1.0, x, y) == Approx(std::sqrt(x * y)).epsilon(1e-10));
      CHECK(stolarsky_mean(s.uniform(-4, 4), x, x) == Approx(x).epsilon(1e-12));
    }
    CHECK(stolarsky_mean(1.0, 1.0, 2.0) == Approx(4.0 / std::numbers::e));
    CHECK_THROWS_AS(stolarsky_mean(2.0, -1.0, 2.0), Error);
  }

  TEST_CASE("dual mean") {
    CHECK(dual_mean(MeanSpec::arithmetic(), 2.0, 6.0) == Approx(3.0));
    Sampler s(25);
    for (int t = 0; t < 200; ++t) {
      const double x = s.uniform(0.1, 10.0);
      const double y = s.uniform(0.1, 10.0);
      CHECK(dual_mean(MeanSpec::geometric(), x, y) == Approx(std::sqrt(x * y)).epsilon(1e-12));
      const MeanSpec p2 = MeanSpec::power(2.0);
      CHECK(mean(MeanSpec::dual(MeanSpec::dual(p2)), x, y) == Approx(mean(p2, x, y)).epsilon(1e-12));
    }
  }

  TEST_CASE("dominance examples") {
    const Interval dom{0.0, 10.0};
    CHECK(dominates(MeanSpec::power(0.0), MeanSpec::power(1.0), dom).verdict == Dominance::DominatedBy);
    CHECK(dominates(MeanSpec::power(2.0), MeanSpec::power(2.0), dom).verdict == Dominance::Dominates);
    CHECK(dominates(MeanSpec::lehmer(-1.0), MeanSpec::lehmer(0.5), dom).verdict == Dominance::DominatedBy);
    const DominanceResult r = dominates(MeanSpec::lehmer(3.0), MeanSpec::power(2.0), dom);
    CHECK(r.verdict == Dominance::Dominates);
    const DominanceResult inc = dominates(MeanSpec::lagrange(generators::exp()), MeanSpec::geometric(), {0.0, 50.0});
    if (inc.verdict == Dominance::Incomparable) {
      REQUIRE(inc.a_below_b.has_value());
      REQUIRE(inc.a_above_b.has_value());
    }
  }

  TEST_CASE("dual order reversal") {
    const Interval dom{0.0, 100.0};
    const MeanSpec a = MeanSpec::arithmetic();
    for (const MeanSpec& m : {MeanSpec::geometric(), MeanSpec::harmonic(), MeanSpec::power(0.5)}) {
      REQUIRE(dominates(m, a, dom).verdict == Dominance::DominatedBy);
      CHECK(dominates(MeanSpec::dual(a), MeanSpec::dual(m), dom).verdict == Dominance::DominatedBy);
    }
  }

  TEST_CASE("innerness and reflexivity") {
    Sampler s(26);
    for (const MeanSpec& m : bivariate_corpus()) {
      CAPTURE(m.to_string());
      for (int t = 0; t < 1000; ++t) {
        const double x = s.log_uniform(0.01, 100.0);
        const double y = s.log_uniform(0.01, 100.0);
        const double v = mean(m, x, y);
        CHECK(v >= std::min(x, y));
        CHECK(v <= std::max(x, y));
      }
      for (double x : {0.3, 1.0, 7.5}) CHECK(close_rel(mean(m, x, x), x, 1e-12));
    }
  }

  TEST_CASE("interpolation and swap") {
    Sampler s(27);
    for (const MeanSpec& m : bivariate_corpus()) {
      if (!m.supports_weights()) continue;
      CAPTURE(m.to_string());
      for (int t = 0; t < 200; ++t) {
        const double p = s.uniform(0.1, 10.0);
        const double q = s.uniform(0.1, 10.0);
        const double a = s.unit();
        CHECK(close_rel(barycenter(m, p, q, 0.0), p, 1e-12));
        CHECK(close_rel(barycenter(m, p, q, 1.0), q, 1e-12));
        CHECK(close_rel(barycenter(m, p, q, 1.0 - a), barycenter(m, q, p, a), 1e-12));
      }
    }
  }

  TEST_CASE("homogeneity") {
    Sampler s(28);
    for (const MeanSpec& m : bivariate_corpus()) {
      if (!m.homogeneous()) continue;
      CAPTURE(m.to_string());
      for (int t = 0; t < 100; ++t) {
        const double x = s.uniform(0.1, 10.0);
        const double y = s.uniform(0.1, 10.0);
        for (double lambda : {0.1, 3.0, 100.0})
          CHECK(close_rel(mean(m, lambda * x, lambda * y), lambda * mean(m, x, y), 1e-10));
      }
    }
    CHECK(MeanSpec::power(2.0).homogeneous());
    CHECK(MeanSpec::geometric().homogeneous());
    CHECK_FALSE(MeanSpec::quasi_arithmetic(generators::exp()).homogeneous());
  }

  TEST_CASE("weight support flags") {
    CHECK(MeanSpec::arithmetic().supports_weights());
    CHECK(MeanSpec::power(2).supports_weights());
    CHECK(MeanSpec::lehmer(1).supports_weights());
    CHECK(MeanSpec::gini(1, 2).supports_weights());
    CHECK_FALSE(MeanSpec::lagrange(generators::log()).supports_weights());
    CHECK_FALSE(MeanSpec::cauchy(generators::log(), generators::identity()).supports_weights());
    CHECK_FALSE(MeanSpec::stolarsky(2).supports_weights());
  }

  TEST_CASE("power mean limits") {
    Sampler s(29);
    for (int t = 0; t < 100; ++t) {
      const double x = s.uniform(0.1, 10.0);
      const double y = s.uniform(0.1, 10.0);
      const double g = std::sqrt(x * y);
      CHECK(close_rel(mean(MeanSpec::power(1e-5), x, y), g, 1e-4));
      CHECK(close_rel(mean(MeanSpec::power(-1e-5), x, y), g, 1e-4));
    }
    // Equal weights leave a factor 2^(-1/50), about 1.4% below the max.
    CHECK(mean(MeanSpec::power(50.0), 1.0, 10.0) == Approx(10.0 * std::pow(0.5, 1.0 / 50.0)).epsilon(1e-12));
    for (double w : {0.7, 0.8, 0.95}) CHECK(close_rel(barycenter(MeanSpec::power(50.0), 1.0, 10.0, w), 10.0, 0.01));
  }

  TEST_CASE("lehmer anchors") {
    Sampler s(30);
    for (int t = 0; t < 200; ++t) {
      const double x = s.uniform(0.1, 10.0);
      const double y = s.uniform(0.1, 10.0);
      CHECK(close_rel(mean(MeanSpec::lehmer(0.0), x, y), mean(MeanSpec::arithmetic(), x, y), 1e-10));
      CHECK(close_rel(mean(MeanSpec::lehmer(-1.0), x, y), mean(MeanSpec::harmonic(), x, y), 1e-10));
      CHECK(close_rel(mean(MeanSpec::lehmer(-0.5), x, y), mean(MeanSpec::geometric(), x, y), 1e-10));
    }
  }

  TEST_CASE("power monotonicity in delta") {
    Sampler s(31);
    for (int t = 0; t < 10000; ++t) {
      const double x = s.log_uniform(0.01, 100.0);
      const double y = s.log_uniform(0.01, 100.0);
      double d1 = s.uniform(-5.0, 5.0);
      double d2 = s.uniform(-5.0, 5.0);
      if (d1 > d2) std::swap(d1, d2);
      const double lo = mean(MeanSpec::power(d1), x, y);
      const double hi = mean(MeanSpec::power(d2), x, y);
      CHECK(lo <= hi * (1 + 4e-15));
    }
  }

  TEST_CASE("spec strings round trip") {
    for (const char* text : {"qa:log", "power:2", "lehmer:-0.5", "gini:1:2", "lagrange:log", "cauchy:log:identity",
                             "stolarsky:2", "dual:power:1"}) {
      CAPTURE(text);
      const MeanSpec m = parse_mean_spec(text);
      CHECK(parse_mean_spec(m.to_string()).to_string() == m.to_string());
      CHECK(mean(m, 2.0, 3.0) == Approx(mean(parse_mean_spec(m.to_string()), 2.0, 3.0)));
    }
    CHECK(parse_mean_spec("G").family() == MeanFamily::QuasiArithmetic);
    CHECK(mean(parse_mean_spec("H"), 2.0, 6.0) == Approx(3.0));
    CHECK_THROWS_AS(parse_mean_spec("power"), Error);
    CHECK_THROWS_AS(parse_mean_spec("bogus:1"), Error);
  }

  TEST_CASE("generator invariants") {
    for (const Generator& g : {generators::identity(), generators::log(), generators::reciprocal(),
                               generators::power(2.0), generators::power(-0.5), generators::exp()}) {
      CAPTURE(g.id());
      CHECK_NOTHROW(validate_generator(g));
      const Interval r = sample_range(g.domain());
      for (double x : make_grid(r, 64)) {
        CHECK(g.inverse(g(x)) == Approx(x).epsilon(1e-10));
        CHECK(g.derivative(x) > 0.0);
      }
    }
    CHECK(generators::reciprocal()(2.0) == Approx(-0.5));
  }
}
