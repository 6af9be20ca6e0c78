#include <cmath>
#include <numbers>
#include <vector>

#include "cdt/divergences.hpp"
#include "cdt/error.hpp"
#include "doctest.h"

using namespace cdt;
using doctest::Approx;

namespace {

const JensenSpec& sq_aa() {
  static const JensenSpec spec = JensenSpec::create(functions::square(), MeanSpec::arithmetic(), MeanSpec::arithmetic());
  return spec;
}

QabdSpec sq_bregman() { return QabdSpec::create(functions::square(), generators::identity(), generators::identity()); }

}  // namespace

TEST_SUITE("divergences") {
  TEST_CASE("jccd examples") {
    const JensenSpec gg = JensenSpec::create(functions::exp(), MeanSpec::geometric(), MeanSpec::geometric());
    CHECK(jccd(gg, 1.0, 4.0).value == Approx(std::exp(2.5) - std::exp(2.0)));
    CHECK(jccd(sq_aa(), 1.0, 3.0).value == Approx(1.0));
    CHECK(jccd(sq_aa(), 2.0, 2.0).value == 0.0);
    CHECK(jccd(gg, 1.7, 1.7).value == 0.0);
  }

  TEST_CASE("jccd rejects non-convex generators") {
    CHECK_THROWS_AS(JensenSpec::create(functions::square(), MeanSpec::arithmetic(), MeanSpec::geometric(),
                                       ConvexityOptions{257, Interval{1.0, 10.0}}),
                    Error);
    CHECK_THROWS_AS(jccd(functions::log(), MeanSpec::arithmetic(), MeanSpec::arithmetic(), 1.0, 2.0), Error);
  }

  TEST_CASE("affine spec warns") {
    const JensenSpec aff = JensenSpec::create(functions::exp(), MeanSpec::arithmetic(), MeanSpec::geometric());
    CHECK(aff.verdict() == ConvexityKind::Affine);
    CHECK_FALSE(aff.warnings().empty());
    CHECK(std::abs(jccd(aff, -1.0, 2.0).value) <= 1e-12);
  }

  TEST_CASE("skew jccd") {
    CHECK(skew_jccd(sq_aa(), 0.25, 0.0, 4.0).value == Approx(3.0));
    CHECK(std::abs(skew_jccd(sq_aa(), 1e-12, 1.0, 3.0).value) <= 1e-8);
    const JensenSpec gg = JensenSpec::create(functions::exp(), MeanSpec::geometric(), MeanSpec::geometric());
    Sampler s(41);
    for (int t = 0; t < 500; ++t) {
      const double p = s.uniform(0.2, 4.0);
      const double q = s.uniform(0.2, 4.0);
      const double a = s.unit();
      CHECK(skew_jccd(gg, a, p, q).value == Approx(skew_jccd(gg, 1.0 - a, q, p).value).epsilon(1e-12));
    }
    CHECK_THROWS_AS(skew_jccd(sq_aa(), 1.5, 1.0, 2.0), Error);
  }

  TEST_CASE("extended skew jensen") {
    CHECK(extended_skew_jensen(functions::square(), 0.5, 1.0, 3.0) == Approx(jccd(sq_aa(), 1.0, 3.0).value));
    CHECK(extended_skew_jensen(functions::square(), 2.0, 1.0, 2.0) == Approx(2.0));
    CHECK(extended_skew_jensen(functions::square(), -1.0, 2.0, 3.0) == Approx(2.0));
    CHECK_THROWS_AS(extended_skew_jensen(functions::square(), 1.0, 2.0, 3.0), Error);
  }

  TEST_CASE("jensen diversity") {
    CHECK(jensen_diversity(sq_aa(), WeightedSet::uniform({2.0, 2.0, 2.0})) == Approx(0.0));
    CHECK(jensen_diversity(sq_aa(), WeightedSet::uniform({1.0, 3.0})) == Approx(1.0));
    const JensenSpec gg = JensenSpec::create(functions::exp(), MeanSpec::geometric(), MeanSpec::geometric());
    Sampler s(42);
    for (int t = 0; t < 100; ++t) {
      const double p = s.uniform(0.2, 4.0);
      const double q = s.uniform(0.2, 4.0);
      const double w = 0.05 + 0.9 * s.unit();
      const WeightedSet set({p, q}, {1.0 - w, w});
      CHECK(jensen_diversity(gg, set) == Approx(skew_jccd(gg, w, p, q).value).epsilon(1e-12));
    }
  }

  TEST_CASE("kappa table") {
    CHECK(kappa(generators::identity(), 2.0, 5.0) == Approx(3.0));
    CHECK(kappa(generators::log(), 2.0, 4.0) == Approx(2.0 * std::log(2.0)));
    Sampler s(43);
    for (int t = 0; t < 100; ++t) {
      const double x = s.uniform(0.2, 5.0);
      const double y = s.uniform(0.2, 5.0);
      for (double d : {-1.0, 0.5, 2.0, 3.0}) {
        const double expected = (std::pow(y, d) - std::pow(x, d)) / (d * std::pow(x, d - 1.0));
        CHECK(kappa(generators::power(d), x, y) == Approx(expected).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("qabd examples") {
    CHECK(qabd(sq_bregman(), 3.0, 1.0).value == Approx(4.0));
    CHECK(qabd(sq_bregman(), 1.5, 1.5).value == 0.0);
    const QabdSpec aff = QabdSpec::create(functions::exp(), generators::identity(), generators::log());
    CHECK(aff.verdict() == ConvexityKind::Affine);
    CHECK(std::abs(qabd(aff, 0.3, -2.0).value) <= 1e-12);
    CHECK_THROWS_AS(QabdSpec::create(functions::log(), generators::identity(), generators::identity()), Error);
  }

  TEST_CASE("conformal parts") {
    const ConformalParts c = qabd_conformal(sq_bregman(), 3.0, 1.0);
    CHECK(c.factor == Approx(1.0));
    CHECK(c.base == Approx(4.0));
    const QabdSpec ll = QabdSpec::create(functions::exp(), generators::log(), generators::log());
    Sampler s(44);
    for (int t = 0; t < 1000; ++t) {
      const double p = s.uniform(0.2, 3.0);
      const double q = s.uniform(0.2, 3.0);
      const ConformalParts parts = qabd_conformal(ll, p, q);
      CHECK(parts.factor > 0.0);
      const double direct = qabd(ll, p, q).value;
      CHECK(std::abs(parts.factor * parts.base - direct) <= 1e-9 * std::abs(direct) + 1e-300);
    }
  }

  TEST_CASE("bccd sequence") {
    const std::vector<double> steps{1e-2, 1e-3, 1e-4};
    const std::vector<double> seq = bccd_numeric(sq_aa(), 3.0, 1.0, steps);
    REQUIRE(seq.size() == 3);
    CHECK(seq.back() == Approx(4.0).epsilon(1e-6));
    for (double v : bccd_numeric(sq_aa(), 2.0, 2.0, steps)) CHECK(v == 0.0);
    const JensenSpec gg = JensenSpec::create(functions::exp(), MeanSpec::geometric(), MeanSpec::geometric());
    const QabdSpec ll = QabdSpec::create(functions::exp(), generators::log(), generators::log());
    Sampler s(45);
    double worst_c = 0.0;
    for (int t = 0; t < 100; ++t) {
      const double p = s.uniform(0.3, 2.5);
      const double q = s.uniform(0.3, 2.5);
      const double exact = qabd(ll, p, q).value;
      const std::vector<double> v = bccd_numeric(gg, p, q, steps);
      CHECK(std::abs(v.back() - exact) <= 1e-3 * std::max(1.0, exact));
      worst_c = std::max(worst_c, std::abs(v.back() - exact) / steps.back());
      // Decay is at least linear: the error shrinks with the step.
      CHECK(std::abs(v[2] - exact) <= std::abs(v[0] - exact) + 1e-9);
    }
    CHECK(worst_c < 1e3);
  }

  TEST_CASE("omega divergence") {
    CHECK(omega_divergence(sq_aa(), 0.0, 1.0, 3.0) == Approx(jccd(sq_aa(), 1.0, 3.0).value));
    CHECK(omega_divergence(sq_aa(), 0.3, 2.0, 2.0) == 0.0);
    CHECK(omega_divergence(sq_aa(), 0.5, 0.0, 4.0) == Approx(4.0));
    CHECK_THROWS_AS(omega_divergence(sq_aa(), 1.0, 0.0, 4.0), Error);
  }

  TEST_CASE("lehmer bregman") {
    CHECK(lehmer_bregman(functions::square(), 0.0, 0.0, 1.0, 3.0) == Approx(4.0));
    CHECK(lehmer_bregman(functions::square(), 0.7, -0.3, 2.0, 2.0) == 0.0);
    CHECK(chi(0.0, 2.0, 5.0) == 3.0);
    CHECK(chi(-1.0, 2.0, 4.0) == Approx(1.0 - 2.0 / 4.0));
    // Harmonic Taylor match at alpha = 1e-6 with alpha' = alpha / p.
    const double alpha = 1e-6;
    for (auto [p, q] : {std::pair{1.0, 3.0}, std::pair{2.5, 0.7}, std::pair{4.0, 4.5}}) {
      const double qa = (barycenter(MeanSpec::harmonic(), p, q, alpha / p) - p) / alpha;
      CHECK(qa == Approx(chi(-1.0, p, q)).epsilon(1e-4));
    }
  }

  TEST_CASE("jensen bregman") {
    CHECK(jensen_bregman(sq_bregman(), 1.0, 3.0) == Approx(1.0));
    CHECK(jensen_bregman(sq_bregman(), 2.0, 2.0) == 0.0);
    const QabdSpec ig = QabdSpec::create(functions::exp(), generators::identity(), generators::log());
    const double jb = jensen_bregman(ig, 0.5, 2.0);
    // exp is (A,G)-affine, so the Jensen-Bregman value vanishes while the
    // arithmetic Jensen gap does not.
    CHECK(std::abs(jb) <= 1e-12);
    const double j = jccd(functions::exp(), MeanSpec::arithmetic(), MeanSpec::arithmetic(), 0.5, 2.0).value;
    CHECK(std::abs(jb - j) > 1e-3);
  }

  TEST_CASE("separable divergence") {
    const std::vector<QabdSpec> one{sq_bregman()};
    CHECK(separable_divergence(one, std::vector<double>{3.0}, std::vector<double>{1.0}) ==
          Approx(qabd(sq_bregman(), 3.0, 1.0).value));
    const std::vector<QabdSpec> two{sq_bregman(), sq_bregman()};
    CHECK(separable_divergence(two, std::vector<double>{3.0, 0.0}, std::vector<double>{1.0, 2.0}) == Approx(8.0));
    CHECK(separable_divergence(two, std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 2.0}) == 0.0);
    CHECK_THROWS_AS(separable_divergence(two, std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}), Error);
  }

  TEST_CASE("power mean bregman") {
    const FunctionModel f = functions::exp().restricted({0.0, kInf});
    for (auto [d1, d2] : {std::pair{0.5, 2.0}, std::pair{1.0, 2.0}, std::pair{-1.0, 1.0}, std::pair{0.5, 3.0}}) {
      const QabdSpec spec = QabdSpec::create(f, generators::power(d1), generators::power(d2));
      Sampler s(46);
      for (int t = 0; t < 200; ++t) {
        const double p = s.uniform(0.3, 3.0);
        const double q = s.uniform(0.3, 3.0);
        const double boxed = (std::pow(f(p), d2) - std::pow(f(q), d2)) / (d2 * std::pow(f(q), d2 - 1.0)) -
                             (std::pow(p, d1) - std::pow(q, d1)) / (d1 * std::pow(q, d1 - 1.0)) * f.derivative(q);
        CHECK(std::abs(qabd(spec, p, q).value - boxed) <= 1e-12 * std::max(1.0, std::abs(f(p)) + std::abs(f(q))));
      }
    }
  }

  TEST_CASE("pythagorean corollary") {
    // (A,A): F(p)-F(q)-(p-q)F'(q); (G,G): F(q) log(F(p)/F(q)) - q log(p/q) F'(q);
    // (H,H): F(q)^2 (1/F(q) - 1/F(p)) - q^2 (1/q - 1/p) F'(q).
    const FunctionModel f = functions::exp().restricted({0.0, kInf});
    const QabdSpec aa = QabdSpec::trusted(f, generators::identity(), generators::identity());
    const QabdSpec gg = QabdSpec::trusted(f, generators::log(), generators::log());
    const QabdSpec hh = QabdSpec::trusted(f, generators::reciprocal(), generators::reciprocal());
    Sampler s(47);
    for (int t = 0; t < 200; ++t) {
      // exp is (H,H)-convex only below 2.
      const double p = s.uniform(0.3, 1.9);
      const double q = s.uniform(0.3, 1.9);
      const double fp = f(p);
      const double fq = f(q);
      const double d = f.derivative(q);
      const double scale = std::max(1.0, fp + fq);
      CHECK(std::abs(qabd(aa, p, q).value - (fp - fq - (p - q) * d)) <= 1e-12 * scale);
      CHECK(std::abs(qabd(gg, p, q).value - (fq * std::log(fp / fq) - q * std::log(p / q) * d)) <= 1e-12 * scale);
      CHECK(std::abs(qabd(hh, p, q).value - (fq * fq * (1 / fq - 1 / fp) - q * q * (1 / q - 1 / p) * d)) <=
            1e-12 * scale * scale);
    }
  }

  TEST_CASE("dominance-induced jensen ordering") {
    // exp is (A,A)- and (G,G)-convex on (0, inf); G <= A on both sides.
    const JensenSpec aa = JensenSpec::create(functions::exp().restricted({0.0, kInf}), MeanSpec::arithmetic(),
                                             MeanSpec::arithmetic());
    const JensenSpec ga = JensenSpec::create(functions::exp().restricted({0.0, kInf}), MeanSpec::geometric(),
                                             MeanSpec::arithmetic());
    Sampler s(48);
    for (int t = 0; t < 1000; ++t) {
      const double p = s.uniform(0.1, 4.0);
      const double q = s.uniform(0.1, 4.0);
      CHECK(jccd(ga, p, q).value >= jccd(aa, p, q).value - 1e-12);
    }
  }

  TEST_CASE("nonnegativity and indiscernibles") {
    const QabdSpec spec = QabdSpec::create(functions::exp_square(), generators::identity(), generators::log());
    Sampler s(49);
    for (int t = 0; t < 10000; ++t) {
      const double p = s.uniform(-2.0, 2.0);
      const double q = s.uniform(-2.0, 2.0);
      const DivergenceValue v = qabd(spec, p, q);
      CHECK(v.value >= 0.0);
      if (std::abs(p - q) > 1e-6 * std::max(1.0, std::abs(p))) CHECK(v.value > 0.0);
      CHECK(qabd(spec, p, p).value == 0.0);
    }
  }
}
