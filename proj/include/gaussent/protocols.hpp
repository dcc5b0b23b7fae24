#ifndef GAUSSENT_PROTOCOLS_HPP
#define GAUSSENT_PROTOCOLS_HPP

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gaussent/epr.hpp"
#include "gaussent/photon_number.hpp"

namespace gaussent {

template <typename Scalar>
struct Teleportation {
  Scalar fidelity{};
  bool beats_no_cloning{};  // fidelity > 2/3
};

/// Unity-gain coherent-state teleportation with unbiased entanglement:
/// F = 1 / (1 + I).
template <typename Scalar>
Teleportation<Scalar> teleport_fidelity(Scalar insep) {
  if (!(insep > Scalar(0))) throw std::invalid_argument("I must be positive");
  const Scalar f = Scalar(1) / (Scalar(1) + insep);
  return {f, f > Scalar(2) / Scalar(3)};
}

/// Shannon capacity of a band-limited Gaussian channel, bits per symbol.
template <typename Scalar>
Scalar shannon_capacity(Scalar snr) {
  if (!(snr >= Scalar(0))) throw std::invalid_argument("signal-to-noise ratio must be non-negative");
  using std::log2;
  return log2(Scalar(1) + snr) / Scalar(2);
}

/// Photons held in a pure squeezed state with squeezed variance v.
template <typename Scalar>
Scalar squeezed_state_photons(Scalar v_sqz) {
  return (v_sqz + Scalar(1) / v_sqz - Scalar(2)) / Scalar(4);
}

/// Squeezed-state channel: the photon budget not spent on squeezing encodes a
/// signal of variance 4 (n_encoding - n_sqz) on the squeezed quadrature.
template <typename Scalar>
Scalar squeezed_channel_capacity(Scalar n_encoding, Scalar v_sqz) {
  if (!(v_sqz > Scalar(0) && v_sqz <= Scalar(1))) throw std::invalid_argument("squeezed variance must lie in (0, 1]");
  const Scalar n_sqz = squeezed_state_photons(v_sqz);
  // Relative slack so that v_sqz = min_feasible_squeezing(n) is accepted despite rounding.
  if (n_encoding < n_sqz * (Scalar(1) - Scalar(1e-12))) {
    std::ostringstream os;
    os << "photon budget " << n_encoding << " is below the " << n_sqz << " photons held in the squeezed state";
    throw DomainError(os.str());
  }
  using std::max;
  return shannon_capacity(Scalar(4) * max(Scalar(0), n_encoding - n_sqz) / v_sqz);
}

/// Squeezed variance that spends the entire budget n on squeezing.
template <typename Scalar>
Scalar min_feasible_squeezing(Scalar n_encoding) {
  using std::sqrt;
  const Scalar s = Scalar(2) * n_encoding + Scalar(1);
  return s - sqrt(s * s - Scalar(1));
}

/// log2(1 + 2 n), reached at v_sqz = 1 / (2 n + 1).
template <typename Scalar>
Scalar optimal_squeezed_capacity(Scalar n_encoding) {
  if (!(n_encoding >= Scalar(0))) throw std::invalid_argument("photon budget must be non-negative");
  using std::log2;
  return log2(Scalar(1) + Scalar(2) * n_encoding);
}

/// Golden-section maximization of squeezed_channel_capacity over the feasible
/// squeezing range, searched in log(v). Returns (capacity, v_sqz).
template <typename Scalar>
std::pair<Scalar, Scalar> optimal_squeezed_capacity_numeric(Scalar n_encoding, Scalar tol = Scalar(1e-13)) {
  if (!(n_encoding >= Scalar(0))) throw std::invalid_argument("photon budget must be non-negative");
  if (n_encoding == Scalar(0)) return {Scalar(0), Scalar(1)};
  using std::exp;
  using std::log;
  using std::sqrt;
  const Scalar lo_v = min_feasible_squeezing(n_encoding);
  auto f = [&](Scalar t) {
    using std::max;
    using std::min;
    const Scalar v = min(Scalar(1), max(lo_v, exp(t)));
    const Scalar n_sqz = squeezed_state_photons(v);
    using std::log2;
    return log2(Scalar(1) + Scalar(4) * max(Scalar(0), n_encoding - n_sqz) / v) / Scalar(2);
  };
  const Scalar inv_phi = (sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  Scalar a = log(lo_v), b = Scalar(0);
  Scalar c = b - inv_phi * (b - a);
  Scalar d = a + inv_phi * (b - a);
  Scalar fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const Scalar t = (a + b) / Scalar(2);
  return {f(t), exp(t)};
}

/// Dense coding over symmetric unbiased entanglement at (n_min, n_excess):
/// two quadrature channels, each with signal n_encoding - n_total/2 and noise I.
template <typename Scalar>
Scalar dense_coding_capacity(Scalar n_encoding, Scalar n_min, Scalar n_excess) {
  if (!(n_min >= Scalar(0)) || !(n_excess >= Scalar(0))) {
    throw std::invalid_argument("photon numbers must be non-negative");
  }
  const Scalar signal = n_encoding - (n_min + n_excess) / Scalar(2);
  if (signal < Scalar(0)) {
    std::ostringstream os;
    os << "photon budget " << n_encoding << " is below half the " << n_min + n_excess
       << " photons held in the entangled state";
    throw DomainError(os.str());
  }
  using std::log2;
  return log2(Scalar(1) + signal / insep_from_nmin(n_min));
}

/// Dense-coding capacity over the optimal squeezed-state capacity.
template <typename Scalar>
Scalar capacity_ratio(Scalar n_encoding, Scalar n_min, Scalar n_excess) {
  const Scalar dense = dense_coding_capacity(n_encoding, n_min, n_excess);
  const Scalar squeezed = optimal_squeezed_capacity(n_encoding);
  if (!(squeezed > Scalar(0))) throw DomainError("capacity ratio undefined for a zero photon budget");
  return dense / squeezed;
}

enum class ContourMetric { epr, fidelity, dense_ratio };

inline ContourMetric parse_contour_metric(std::string_view token) {
  if (token == "epr") return ContourMetric::epr;
  if (token == "fidelity") return ContourMetric::fidelity;
  if (token == "dense_ratio" || token == "dense-ratio") return ContourMetric::dense_ratio;
  throw std::invalid_argument("unknown contour metric '" + std::string(token) + "'");
}

inline std::string_view to_string(ContourMetric m) {
  switch (m) {
    case ContourMetric::epr: return "epr";
    case ContourMetric::fidelity: return "fidelity";
    case ContourMetric::dense_ratio: return "dense_ratio";
  }
  return "unknown";
}

template <typename Scalar>
struct ContourParams {
  Scalar n_encoding{125};
};

/// Metric values on the n_bias = 0 plane of the photon number diagram.
/// values[i][j] belongs to (nmin_axis[i], nexcess_axis[j]); nodes where the
/// photon budget cannot hold the state are NaN.
template <typename Scalar>
struct ContourGrid {
  ContourMetric metric{ContourMetric::epr};
  std::vector<Scalar> nmin_axis;
  std::vector<Scalar> nexcess_axis;
  std::vector<std::vector<Scalar>> values;
  ContourParams<Scalar> params{};
};

template <typename Scalar>
Scalar contour_value(ContourMetric metric, Scalar n_min, Scalar n_excess, const ContourParams<Scalar>& params) {
  switch (metric) {
    case ContourMetric::epr: return epr_from_photons(n_min, n_excess);
    case ContourMetric::fidelity: return teleport_fidelity(insep_from_nmin(n_min)).fidelity;
    case ContourMetric::dense_ratio:
      if (params.n_encoding < (n_min + n_excess) / Scalar(2)) return std::numeric_limits<Scalar>::quiet_NaN();
      return capacity_ratio(params.n_encoding, n_min, n_excess);
  }
  throw std::invalid_argument("unknown contour metric");
}

namespace detail {

template <typename Scalar>
std::vector<Scalar> linear_axis(std::pair<Scalar, Scalar> range, int n, const char* name) {
  if (!(range.first >= Scalar(0)) || !(range.second > range.first)) {
    throw std::invalid_argument(std::string(name) + " range must satisfy 0 <= lo < hi");
  }
  std::vector<Scalar> axis(static_cast<std::size_t>(n));
  const Scalar step = (range.second - range.first) / Scalar(n - 1);
  for (int i = 0; i < n; ++i) axis[static_cast<std::size_t>(i)] = range.first + step * Scalar(i);
  axis.back() = range.second;
  return axis;
}

}  // namespace detail

/// Samples `metric` on a resolution x resolution grid spanning the given
/// n_min and n_excess ranges (endpoints included).
template <typename Scalar>
ContourGrid<Scalar> contour_grid(ContourMetric metric, std::pair<Scalar, Scalar> nmin_range,
                                 std::pair<Scalar, Scalar> nexcess_range, int resolution = 200,
                                 ContourParams<Scalar> params = {}) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  if (metric == ContourMetric::dense_ratio && !(params.n_encoding > Scalar(0))) {
    throw std::invalid_argument("dense_ratio grids need a positive n_encoding");
  }
  ContourGrid<Scalar> grid;
  grid.metric = metric;
  grid.params = params;
  grid.nmin_axis = detail::linear_axis(nmin_range, resolution, "n_min");
  grid.nexcess_axis = detail::linear_axis(nexcess_range, resolution, "n_excess");
  grid.values.assign(grid.nmin_axis.size(), std::vector<Scalar>(grid.nexcess_axis.size()));
  for (std::size_t i = 0; i < grid.nmin_axis.size(); ++i)
    for (std::size_t j = 0; j < grid.nexcess_axis.size(); ++j)
      grid.values[i][j] = contour_value(metric, grid.nmin_axis[i], grid.nexcess_axis[j], params);
  return grid;
}

}  // namespace gaussent

#endif  // GAUSSENT_PROTOCOLS_HPP
