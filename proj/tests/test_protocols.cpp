#include <cmath>

#include "doctest.h"

#include "gaussent/protocols.hpp"
#include "support/oracles.hpp"

using namespace gaussent;
using oracle::near;

TEST_CASE("teleportation fidelity") {
  const auto sep = teleport_fidelity(1.0);
  CHECK(sep.fidelity == 0.5);
  CHECK_FALSE(sep.beats_no_cloning);
  CHECK(near(teleport_fidelity(0.44).fidelity, 0.6944444, 1e-6));
  CHECK(teleport_fidelity(0.44).beats_no_cloning);
  CHECK_FALSE(teleport_fidelity(0.5).beats_no_cloning);
  CHECK(near(teleport_fidelity(1e-12).fidelity, 1.0, 1e-11));
  CHECK_THROWS_AS(teleport_fidelity(0.0), std::invalid_argument);
  double prev = 2;
  for (double i = 0.01; i < 2; i += 0.01) {
    CHECK(teleport_fidelity(i).fidelity < prev);
    prev = teleport_fidelity(i).fidelity;
  }
}

TEST_CASE("Shannon capacity") {
  CHECK(shannon_capacity(0.0) == 0.0);
  CHECK(shannon_capacity(3.0) == 1.0);
  CHECK(shannon_capacity(255.0) == 4.0);
  CHECK_THROWS_AS(shannon_capacity(-1.0), std::invalid_argument);
}

TEST_CASE("squeezed channel") {
  CHECK(near(squeezed_channel_capacity(3.375, 1.0), 1.9289905, 1e-6));
  for (double n : {0.5, 3.375, 125.0}) {
    CHECK(near(squeezed_channel_capacity(n, 1.0 / (2 * n + 1)), std::log2(1 + 2 * n), 1e-12));
  }
  const double v = 0.2;
  CHECK(near(squeezed_channel_capacity(squeezed_state_photons(v), v), 0.0, 1e-15));
  CHECK(near(squeezed_channel_capacity(3.375, min_feasible_squeezing(3.375)), 0.0, 1e-6));
  CHECK_THROWS_AS(squeezed_channel_capacity(0.1, 0.2), DomainError);
  CHECK_THROWS_AS(squeezed_channel_capacity(1.0, 1.5), std::invalid_argument);
}

TEST_CASE("optimal squeezed capacity") {
  CHECK(near(optimal_squeezed_capacity(3.375), 2.9541963, 1e-6));
  CHECK(optimal_squeezed_capacity(0.0) == 0.0);
  CHECK(near(optimal_squeezed_capacity(125.0), 7.9715436, 1e-6));
  for (double n : {0.5, 3.375, 125.0}) {
    const auto [c, v] = optimal_squeezed_capacity_numeric(n);
    CHECK(near(c, optimal_squeezed_capacity(n), 1e-6));
    CHECK(near(v, 1.0 / (2 * n + 1), 1e-4));
  }
}

TEST_CASE("optimum found by brute-force grid over v") {
  // Independent of the golden-section search: dense log grid on (v_min, 1].
  for (double n : {0.5, 3.375, 125.0}) {
    const double lo = min_feasible_squeezing(n);
    double best = 0;
    const int steps = 400000;
    for (int k = 0; k <= steps; ++k) {
      const double v = std::exp(std::log(lo) * (1.0 - static_cast<double>(k) / steps));
      best = std::max(best, squeezed_channel_capacity(n, std::max(v, lo)));
    }
    CHECK(near(best, optimal_squeezed_capacity(n), 1e-6));
  }
}

TEST_CASE("dense coding") {
  CHECK(near(dense_coding_capacity(125.0, 0.356, 1.944), 8.1414203, 1e-6));
  CHECK(near(dense_coding_capacity(1.15, 0.3, 2.0), 0.0, 1e-15));
  CHECK_THROWS_AS(dense_coding_capacity(1.0, 0.3, 2.0), DomainError);
  CHECK(near(capacity_ratio(125.0, 0.356, 1.944), 1.0213104, 1e-6));
  CHECK(near(capacity_ratio(3.375, 0.0, 0.0), std::log2(4.375) / std::log2(7.75), 1e-12));
  CHECK(near(capacity_ratio(3.375, 0.0, 0.0), 0.7207656, 1e-6));
  CHECK(capacity_ratio(3.375, 0.0, 0.0) < 1.0);
  CHECK_THROWS_AS(capacity_ratio(0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("dense coding monotonicity") {
  double prev = 1e9;
  for (double ne = 0; ne <= 4.0; ne += 0.25) {
    const double c = dense_coding_capacity(3.375, 0.5, ne);
    CHECK(c < prev);
    prev = c;
  }
  prev = -1;
  for (double n = 2; n <= 200; n *= 1.5) {
    const double c = dense_coding_capacity(n, 0.5, 1.0);
    CHECK(c > prev);
    prev = c;
  }
  prev = 1e9;
  for (double ne = 0; ne <= 4.0; ne += 0.5) {
    const double r = capacity_ratio(3.375, 1.0, ne);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("large budgets make dense coding insensitive to excess photons") {
  for (double n_min : {0.1, 0.5, 2.0}) {
    CHECK(std::abs(capacity_ratio(1e6, n_min, 0.0) - capacity_ratio(1e6, n_min, 10.0)) < 1e-3);
  }
}

TEST_CASE("contour grids") {
  SUBCASE("epr node") {
    const auto g = contour_grid<double>(ContourMetric::epr, {0.0, 0.712}, {0.0, 3.888}, 3);
    CHECK(near(g.nmin_axis[1], 0.356, 1e-15));
    CHECK(near(g.nexcess_axis[1], 1.944, 1e-15));
    CHECK(near(g.values[1][1], 0.6750859, 1e-6));
  }
  SUBCASE("fidelity contours are vertical") {
    const auto g = contour_grid<double>(ContourMetric::fidelity, {0.0, 3.0}, {0.0, 4.0}, 40);
    for (const auto& row : g.values)
      for (double v : row) CHECK(v == row.front());
    CHECK(g.values.front().front() == 0.5);
  }
  SUBCASE("dense ratio node") {
    const auto g = contour_grid<double>(ContourMetric::dense_ratio, {0.0, 0.712}, {0.0, 3.888}, 3,
                                        ContourParams<double>{125.0});
    CHECK(near(g.values[1][1], 1.0213104, 1e-6));
  }
  SUBCASE("infeasible nodes are NaN") {
    const auto g = contour_grid<double>(ContourMetric::dense_ratio, {0.0, 3.0}, {0.0, 4.0}, 5,
                                        ContourParams<double>{1.0});
    CHECK(std::isnan(g.values.back().back()));
    CHECK_FALSE(std::isnan(g.values[1][0]));
  }
  SUBCASE("shape and axes") {
    const auto g = contour_grid<double>(ContourMetric::epr, {0.0, 3.0}, {0.0, 4.0});
    CHECK(g.nmin_axis.size() == 200);
    CHECK(g.nexcess_axis.size() == 200);
    CHECK(g.values.size() == 200);
    CHECK(g.values.front().size() == 200);
    CHECK(g.nmin_axis.back() == 3.0);
    for (std::size_t i = 1; i < g.nmin_axis.size(); ++i) CHECK(g.nmin_axis[i] > g.nmin_axis[i - 1]);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(contour_grid<double>(ContourMetric::epr, {0.0, 3.0}, {0.0, 4.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(contour_grid<double>(ContourMetric::epr, {3.0, 3.0}, {0.0, 4.0}, 5), std::invalid_argument);
    CHECK_THROWS_AS(parse_contour_metric("purity"), std::invalid_argument);
    CHECK(parse_contour_metric("dense_ratio") == ContourMetric::dense_ratio);
    CHECK(to_string(ContourMetric::fidelity) == "fidelity");
  }
}
