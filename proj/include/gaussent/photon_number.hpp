#ifndef GAUSSENT_PHOTON_NUMBER_HPP
#define GAUSSENT_PHOTON_NUMBER_HPP

#include <cmath>
#include <stdexcept>

#include "gaussent/correlation_matrix.hpp"
#include "gaussent/state.hpp"

namespace gaussent {

/// Mean sideband photon numbers (per bandwidth per time) of a two-beam state.
/// n_total = n_min + n_bias + n_excess, n_pure = n_min + n_bias.
template <typename Scalar>
struct PhotonDecomposition {
  Scalar n_total{};
  Scalar n_pure{};
  Scalar n_min{};
  Scalar n_bias{};
  Scalar n_excess{};
  Scalar g_bias_sq{1};  // local squeezing gain g^2 that removes the bias
};

/// |alpha+|^2 + |alpha-|^2 + (V+ + V- - 2)/4.
template <typename Scalar>
Scalar mean_photon_number(const SqueezedBeam<Scalar>& beam) {
  require_physical(beam.variances);
  return beam.alpha_plus * beam.alpha_plus + beam.alpha_minus * beam.alpha_minus +
         (beam.variances.v_plus + beam.variances.v_minus - Scalar(2)) / Scalar(4);
}

/// Photons required to maintain entanglement of strength I: (I + 1/I)/2 - 1.
template <typename Scalar>
Scalar nmin_from_insep(Scalar insep) {
  if (!(insep > Scalar(0))) throw std::invalid_argument("I must be positive");
  if (insep >= Scalar(1)) return Scalar(0);
  return (insep + Scalar(1) / insep) / Scalar(2) - Scalar(1);
}

/// Inverse of nmin_from_insep on (0, 1]: I = n + 1 - sqrt((n + 1)^2 - 1).
template <typename Scalar>
Scalar insep_from_nmin(Scalar n_min) {
  if (!(n_min >= Scalar(0))) throw std::invalid_argument("n_min must be non-negative");
  using std::sqrt;
  const Scalar m1 = n_min + Scalar(1);
  return m1 - sqrt(m1 * m1 - Scalar(1));
}

/// Photons in two pure squeezed beams with squeezed variances a and b.
template <typename Scalar>
Scalar pure_pair_photons(Scalar a, Scalar b) {
  return (a + Scalar(1) / a + b + Scalar(1) / b) / Scalar(4) - Scalar(1);
}

/// n_pure after equal local squeezing with gain g (g2 = g^2) on both beams.
template <typename Scalar>
Scalar squeezed_pure_photons(Scalar v_plus, Scalar v_minus, Scalar g2) {
  return (g2 * v_plus + Scalar(1) / (g2 * v_plus) + v_minus / g2 + g2 / v_minus) / Scalar(4) - Scalar(1);
}

/// Splits the photons of an x/y-symmetric state into the part needed for the
/// entanglement (n_min), the part from amplitude/phase bias (n_bias), and the
/// remainder from impurity (n_excess).
///
/// For I >= 1 there is no entanglement: n_min = 0, the bias part is whatever
/// equal local squeezing can remove, and the rest is excess.
template <typename Scalar>
PhotonDecomposition<Scalar> decompose(const CorrelationMatrix<Scalar>& cm, Scalar tol = Scalar(1e-9)) {
  if (!check_symmetric_form(cm, tol)) {
    throw DomainError(
        "photon decomposition needs an x/y-symmetric matrix without cross-quadrature terms; "
        "symmetrize the measurement first");
  }
  using std::sqrt;
  const Scalar v_plus = min_sum_diff_variance(cm, Quadrature::amplitude);
  const Scalar v_minus = min_sum_diff_variance(cm, Quadrature::phase);
  if (!(v_plus > Scalar(0)) || !(v_minus > Scalar(0))) {
    throw DomainError("non-positive sum/difference variance; the matrix is not physical");
  }
  const Scalar insep = sqrt(v_plus * v_minus);

  PhotonDecomposition<Scalar> out;
  out.n_total = (cm.xx(Quadrature::amplitude) + cm.xx(Quadrature::phase)) / Scalar(2) - Scalar(1);
  out.g_bias_sq = sqrt(v_minus / v_plus);
  const Scalar unbiased = (insep + Scalar(1) / insep) / Scalar(2) - Scalar(1);
  const Scalar pure = pure_pair_photons(v_plus, v_minus);
  if (insep < Scalar(1)) {
    out.n_min = unbiased;
    out.n_pure = pure;
    out.n_bias = pure - unbiased;
  } else {
    out.n_min = Scalar(0);
    out.n_bias = pure - unbiased;
    out.n_pure = out.n_bias;
  }
  out.n_excess = out.n_total - out.n_pure;
  return out;
}

/// |<dXx dXy>| of a symmetric unbiased state: n_excess + sqrt((n_min + 1)^2 - 1).
template <typename Scalar>
Scalar cross_corr_from_photons(Scalar n_min, Scalar n_excess) {
  if (!(n_min >= Scalar(0)) || !(n_excess >= Scalar(0))) {
    throw std::invalid_argument("photon numbers must be non-negative");
  }
  using std::sqrt;
  const Scalar m1 = n_min + Scalar(1);
  return n_excess + sqrt(m1 * m1 - Scalar(1));
}

/// Rebuilds the symmetric unbiased correlation matrix at (n_min, n_excess):
/// all mode variances n_total + 1, amplitude anti-correlated and phase
/// correlated.
template <typename Scalar>
CorrelationMatrix<Scalar> symmetric_state_from_photons(Scalar n_min, Scalar n_excess) {
  const Scalar var = n_min + n_excess + Scalar(1);
  const Scalar c = cross_corr_from_photons(n_min, n_excess);
  return CorrelationMatrix<Scalar>::symmetric_form(var, var, -c, c);
}

}  // namespace gaussent

#endif  // GAUSSENT_PHOTON_NUMBER_HPP
