#include <cmath>
#include <random>

#include "doctest.h"

#include "gaussent/separability.hpp"
#include "gaussent/state.hpp"
#include "support/anchors.hpp"
#include "support/oracles.hpp"

using namespace gaussent;
using oracle::near;

TEST_CASE("k parameter") {
  CHECK(k_parameter(testdata::cm_6_5MHz()) == 1.0);

  // (5-1)/(2-1) = 4 in both quadratures.
  const auto biased = CorrelationMatrix4::standard_form(2.0, 5.0, 1.5, 3.0, -1.0, 1.0);
  CHECK(near(k_parameter(biased), std::pow(4.0, 0.25), 1e-12));
  CHECK(near(k_parameter(biased), 1.41421356, 1e-8));

  CHECK_THROWS_AS(k_parameter(CorrelationMatrix4::vacuum()), DegenerateStateError);
  const auto inconsistent = CorrelationMatrix4::standard_form(2.0, 5.0, 2.0, 3.0, -1.0, 1.0);
  CHECK_THROWS_AS(k_parameter(inconsistent), InconsistentBiasError);
}

TEST_CASE("sum criterion") {
  SUBCASE("6.5 MHz matrix") {
    const auto r = duan_sum_criterion(testdata::cm_6_5MHz(), std::optional<double>(1.0));
    CHECK(near(r.lhs, 1.6, 1e-12));
    CHECK(r.rhs == 4.0);
    CHECK(r.satisfied);
    CHECK(r.applicable);
  }
  SUBCASE("vacuum sits on the boundary") {
    const auto r = duan_sum_criterion(CorrelationMatrix4::vacuum(), std::optional<double>(1.0));
    CHECK(r.lhs == 4.0);
    CHECK(r.rhs == 4.0);
    CHECK_FALSE(r.satisfied);
    CHECK(r.sign_defaulted);
  }
  SUBCASE("3.5 MHz matrix satisfies but is not applicable") {
    const auto r = duan_sum_criterion(testdata::cm_3_5MHz(), std::optional<double>(1.0));
    CHECK(near(r.lhs, 2.6, 1e-12));
    CHECK(r.satisfied);
    CHECK_FALSE(r.applicable);
  }
  SUBCASE("k defaults to the bias parameter") {
    CHECK(duan_sum_criterion(testdata::cm_6_5MHz()).k == 1.0);
  }
}

TEST_CASE("standard form restrictions") {
  const auto r60 = standard_form_restrictions(testdata::cm_6_5MHz());
  CHECK(r60.eq15_ok);
  CHECK(r60.eq16_ok);

  const auto r59 = standard_form_restrictions(testdata::cm_3_5MHz());
  CHECK(r59.eq15_ok);
  CHECK_FALSE(r59.eq16_ok);
  CHECK(r59.diagnostic.find("deficits") != std::string::npos);

  const auto rv = standard_form_restrictions(CorrelationMatrix4::vacuum());
  CHECK_FALSE(rv.eq15_ok);
  CHECK_FALSE(rv.eq16_ok);
  CHECK(rv.diagnostic.find("undefined") != std::string::npos);
}

TEST_CASE("product restriction") {
  CHECK(product_restriction(testdata::cm_6_5MHz()));
  CHECK(product_restriction(testdata::cm_3_5MHz()));
  const auto constructed = CorrelationMatrix4::standard_form(2.0, 3.0, 2.0, 2.0, -0.5, 0.5);
  CHECK_FALSE(product_restriction(constructed));
}

TEST_CASE("degree of inseparability") {
  CHECK(near(degree_of_inseparability(testdata::cm_6_5MHz()), 0.4, 1e-12));
  CHECK(near(degree_of_inseparability(testdata::cm_3_5MHz()), 0.6, 1e-12));
  CHECK(degree_of_inseparability(CorrelationMatrix4::vacuum()) == 1.0);
  CHECK_THROWS_AS(degree_of_inseparability(CorrelationMatrix4::symmetric_form(1.0, 1.0, -1.0, 0.0)), DomainError);
}

TEST_CASE("general form agrees with the symmetric shortcut at k = 1") {
  const auto cm = testdata::cm_3_5MHz();
  const double dp = inseparability_variance(cm, Quadrature::amplitude, 1.0);
  const double dm = inseparability_variance(cm, Quadrature::phase, 1.0);
  CHECK(near(std::sqrt(dp * dm) / 2.0, degree_of_inseparability(cm), 1e-12));
}

TEST_CASE("report collects the pieces") {
  const auto r = analyze_inseparability(testdata::cm_6_5MHz());
  CHECK(r.k == 1.0);
  CHECK(r.sum_rhs == 4.0);
  CHECK(r.sum_applicable);
  CHECK(r.product_applicable);
  CHECK(near(r.degree, 0.4, 1e-12));
}

TEST_CASE("inseparability versus loss") {
  CHECK(inseparability_vs_loss(0.5, 1.0) == 0.5);
  CHECK(inseparability_vs_loss(0.5, 0.5) == 0.75);
  CHECK(inseparability_vs_loss(0.3, 0.0) == 1.0);
  CHECK_THROWS_AS(inseparability_vs_loss(0.5, 1.5), std::invalid_argument);

  const auto state = entangle_on_beamsplitter(SqueezedBeamd::pure(0.5), SqueezedBeamd::pure(0.5));
  CHECK(near(degree_of_inseparability(apply_loss(state.cm, 0.5, 0.5)), 0.75, 1e-12));
}

TEST_CASE("pipeline equals the closed form for equal pure inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> v(0.01, 0.99);
  std::uniform_real_distribution<double> eta(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double vv = v(rng), e = eta(rng);
    const auto state = entangle_on_beamsplitter(SqueezedBeamd::pure(vv), SqueezedBeamd::pure(vv));
    CHECK(near(degree_of_inseparability(apply_loss(state.cm, e, e)), inseparability_vs_loss(vv, e), 1e-12));
  }
}

TEST_CASE("unequal inputs: lossless I is the geometric mean") {
  const auto state = entangle_on_beamsplitter(SqueezedBeamd::pure(0.2), SqueezedBeamd::pure(0.8));
  CHECK(near(degree_of_inseparability(state.cm), std::sqrt(0.2 * 0.8), 1e-12));
  CHECK(degree_of_inseparability(state.cm) <= inseparability_vs_loss(0.5, 1.0));
}

TEST_CASE("invariance under equal local squeezing") {
  const auto cm = testdata::cm_3_5MHz();
  const double base = degree_of_inseparability(cm);
  for (double g = 0.5; g <= 2.0; g += 0.125) CHECK(near(degree_of_inseparability(local_squeeze(cm, g)), base, 1e-12));
}

TEST_CASE("I increases strictly as efficiency drops") {
  const auto state = entangle_on_beamsplitter(SqueezedBeamd::pure(0.3), SqueezedBeamd::pure(0.3));
  double prev = 0;
  for (int s = 20; s >= 0; --s) {
    const double eta = s / 20.0;
    const double i = degree_of_inseparability(apply_loss(state.cm, eta, eta));
    CHECK(i > prev);
    CHECK(i <= 1.0);
    prev = i;
  }
}

TEST_CASE("sum and product forms agree when the restrictions hold") {
  // Equal inputs with extra noise, then unequal loss per beam: standard form
  // with k != 1 that satisfies both restrictions exactly.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> v(0.05, 1.0);
  std::uniform_real_distribution<double> noise(0.0, 1.5);
  std::uniform_real_distribution<double> eta(0.05, 1.0);
  int entangled = 0, separable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const double a = v(rng), t = noise(rng);
    const SqueezedBeamd in{{a + t, 1.0 / a + t}, 0, 0};
    const auto state = entangle_on_beamsplitter(in, in);
    const auto cm = apply_loss(state.cm, eta(rng), eta(rng));
    const auto restrictions = standard_form_restrictions(cm);
    REQUIRE(restrictions.eq15_ok);
    REQUIRE(restrictions.eq16_ok);
    const bool below = degree_of_inseparability(cm) < 1.0;
    CHECK(duan_sum_criterion(cm).satisfied == below);
    ++(below ? entangled : separable);
  }
  CHECK(entangled > 50);
  CHECK(separable > 50);
}

TEST_CASE("report invariants") {
  const auto biased = CorrelationMatrix4::standard_form(2.0, 5.0, 1.5, 3.0, -1.0, 1.0);
  const auto r = analyze_inseparability(biased);
  CHECK(r.sum_rhs > 4.0);
  CHECK(r.degree > 0.0);
}
