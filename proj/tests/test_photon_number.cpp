#include <cmath>
#include <random>

#include "doctest.h"

#include "gaussent/photon_number.hpp"
#include "gaussent/separability.hpp"
#include "support/anchors.hpp"
#include "support/oracles.hpp"

using namespace gaussent;
using oracle::near;

namespace {

void check_invariants(const PhotonDecomposition<double>& d) {
  CHECK(d.n_min >= -1e-12);
  CHECK(d.n_bias >= -1e-12);
  CHECK(d.n_excess >= -1e-12);
  CHECK(near(d.n_total, d.n_min + d.n_bias + d.n_excess, 1e-12));
  CHECK(near(d.n_pure, d.n_min + d.n_bias, 1e-12));
}

}  // namespace

TEST_CASE("mean photon number of one beam") {
  CHECK(mean_photon_number(SqueezedBeamd{}) == 0.0);
  CHECK(mean_photon_number(SqueezedBeamd::pure(0.5)) == 0.125);
  CHECK(mean_photon_number(SqueezedBeamd{{1, 1}, 1.0, 0.0}) == 1.0);
  CHECK_THROWS_AS(mean_photon_number(SqueezedBeamd{{0.5, 0.5}, 0, 0}), std::invalid_argument);
}

TEST_CASE("decomposition of the 6.5 MHz matrix") {
  const auto d = decompose(testdata::cm_6_5MHz());
  CHECK(near(d.n_total, 2.3, 1e-12));
  // I = 0.4 from the rounded matrix entries; n_min = (0.4 + 2.5)/2 - 1.
  CHECK(near(d.n_min, 0.45, 1e-12));
  CHECK(near(d.n_bias, 0.0, 1e-12));
  CHECK(near(d.n_excess, 1.85, 1e-12));
  CHECK(near(d.g_bias_sq, 1.0, 1e-12));
  check_invariants(d);
}

TEST_CASE("decomposition with the directly measured 0.44 variances") {
  const auto cm = CorrelationMatrix4::symmetric_form(3.3, 3.3, 0.44 - 3.3, 3.3 - 0.44);
  const auto d = decompose(cm);
  CHECK(near(d.n_min, 0.3563636, 1e-6));
  CHECK(near(d.n_excess, 1.9436364, 1e-6));
  CHECK(near(d.n_bias, 0.0, 1e-12));
}

TEST_CASE("decomposition of the 3.5 MHz matrix") {
  const auto d = decompose(testdata::cm_3_5MHz());
  CHECK(near(d.n_total, 5.15, 1e-12));
  CHECK(near(d.n_pure, 0.2277778, 1e-6));
  CHECK(near(d.n_min, 0.1333333, 1e-6));
  CHECK(near(d.n_bias, 0.0944444, 1e-6));
  CHECK(near(d.n_excess, 4.9222222, 1e-6));
  CHECK(near(d.g_bias_sq, std::sqrt(0.4 / 0.9), 1e-12));
  check_invariants(d);
}

TEST_CASE("pure symmetric state holds only n_min") {
  const auto cm = CorrelationMatrix4::symmetric_form(1.25, 1.25, -0.75, 0.75);
  const auto d = decompose(cm);
  CHECK(near(d.n_total, 0.25, 1e-12));
  CHECK(near(d.n_min, 0.25, 1e-12));
  CHECK(near(d.n_bias, 0.0, 1e-12));
  CHECK(near(d.n_excess, 0.0, 1e-12));
}

TEST_CASE("states without entanglement") {
  const auto vac = decompose(CorrelationMatrix4::vacuum());
  CHECK(vac.n_min == 0.0);
  CHECK(vac.n_total == 0.0);
  CHECK(near(vac.n_excess, 0.0, 1e-15));

  // Thermal-ish, uncorrelated: I > 1.
  const auto warm = decompose(CorrelationMatrix4::symmetric_form(1.5, 3.0, 0.0, 0.0));
  CHECK(warm.n_min == 0.0);
  CHECK(warm.n_bias > 0.0);
  check_invariants(warm);
}

TEST_CASE("decomposition needs symmetric form") {
  const auto cm = CorrelationMatrix4::standard_form(2.0, 3.0, 2.0, 2.0, -0.5, 0.5);
  CHECK_THROWS_AS(decompose(cm), DomainError);
}

TEST_CASE("inverse pair between I and n_min") {
  CHECK(near(insep_from_nmin(0.356), 0.4401747, 1e-6));
  CHECK(insep_from_nmin(0.0) == 1.0);
  CHECK(nmin_from_insep(1.0) == 0.0);
  for (int k = 1; k <= 99; ++k) {
    const double i = k / 100.0;
    CHECK(near(insep_from_nmin(nmin_from_insep(i)), i, 1e-12));
  }
  CHECK_THROWS_AS(insep_from_nmin(-1.0), std::invalid_argument);
}

TEST_CASE("n_min grows as I falls") {
  double prev = -1;
  for (int k = 100; k >= 1; --k) {
    const double n = nmin_from_insep(k / 100.0);
    CHECK(n > prev);
    prev = n;
  }
}

TEST_CASE("cross correlation from photons") {
  CHECK(near(cross_corr_from_photons(0.356, 1.944), 2.8598253, 1e-6));
  CHECK(cross_corr_from_photons(0.0, 0.0) == 0.0);
  CHECK(near(cross_corr_from_photons(0.25, 0.0), 0.75, 1e-12));
  CHECK_THROWS_AS(cross_corr_from_photons(0.1, -1.0), std::invalid_argument);
}

TEST_CASE("reconstruction round trip") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const CorrelationMatrix4 cm(oracle::symmetric_cm(oracle::random_symmetric(rng)));
    const auto d = decompose(cm);
    CHECK(near(d.n_bias, 0.0, 1e-10));
    const auto rebuilt = symmetric_state_from_photons(d.n_min, d.n_excess);
    CHECK((rebuilt.matrix() - cm.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
    const auto again = decompose(rebuilt);
    CHECK(near(again.n_min, d.n_min, 1e-10));
    CHECK(near(again.n_excess, d.n_excess, 1e-10));
  }
}

TEST_CASE("n_min invariant under equal local squeezing") {
  const auto cm = testdata::cm_3_5MHz();
  const double base = decompose(cm).n_min;
  for (double g = 0.5; g <= 2.0; g += 0.1) CHECK(near(decompose(local_squeeze(cm, g)).n_min, base, 1e-10));
}

TEST_CASE("bias gain minimizes the locally squeezed pure photon number") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> v(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    const double vp = v(rng), vm = v(rng);
    const auto cm = CorrelationMatrix4::symmetric_form(2.0, 2.0, vp - 2.0, 2.0 - vm);
    const auto d = decompose(cm);
    // Scan log-spaced g^2 in [0.01, 100], then refine around the best node.
    double best_g2 = 0, best = 1e300;
    const int n = 200000;
    for (int k = 0; k <= n; ++k) {
      const double g2 = std::pow(10.0, -2.0 + 4.0 * k / n);
      const double val = squeezed_pure_photons(vp, vm, g2);
      if (val < best) {
        best = val;
        best_g2 = g2;
      }
    }
    CHECK(near(best_g2, d.g_bias_sq, 1e-4 * d.g_bias_sq));
    CHECK(near(best, d.n_min, 1e-6));
    CHECK(squeezed_pure_photons(vp, vm, d.g_bias_sq) <= best + 1e-12);
  }
}

TEST_CASE("n_min is additive over independent pairs") {
  // Photon numbers of independent pairs add; I multiplies only for the
  // composite four-mode state, which is outside these types.
  const double a = nmin_from_insep(0.4), b = nmin_from_insep(0.7);
  const PhotonDecomposition<double> pa{a, a, a, 0, 0, 1}, pb{b, b, b, 0, 0, 1};
  CHECK(near(pa.n_min + pb.n_min, a + b, 1e-15));
}
