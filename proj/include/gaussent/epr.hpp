#ifndef GAUSSENT_EPR_HPP
#define GAUSSENT_EPR_HPP

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gaussent/correlation_matrix.hpp"

namespace gaussent {

template <typename Scalar>
struct ConditionalVariance {
  Scalar variance{};
  Scalar gain{};  // optimal inference gain g = C_xy / C_yy
};

template <typename Scalar>
struct EprReport {
  Scalar cv_plus{};
  Scalar cv_minus{};
  Scalar g_plus{};
  Scalar g_minus{};
  Scalar degree{};  // E = cv_plus * cv_minus; EPR paradox iff < 1
};

template <typename Scalar>
struct EprAsymptotes {
  Scalar pure_limit{};    // n_excess -> 0
  Scalar impure_limit{};  // n_excess -> infinity
};

/// Residual variance of beam x's quadrature after optimal linear inference
/// from the same quadrature of beam y: C_xx - C_xy^2 / C_yy.
template <typename Scalar>
ConditionalVariance<Scalar> conditional_variance(const CorrelationMatrix<Scalar>& cm, Quadrature q) {
  const Scalar yy = cm.yy(q);
  if (!(yy > Scalar(0))) throw DomainError("conditional variance needs a positive variance on beam y");
  const Scalar xy = cm.xy(q);
  return {cm.xx(q) - xy * xy / yy, xy / yy};
}

/// <(dXx - g dXy)^2> as a function of the inference gain g.
template <typename Scalar>
Scalar inference_residual(const CorrelationMatrix<Scalar>& cm, Quadrature q, Scalar g) {
  return cm.xx(q) - Scalar(2) * g * cm.xy(q) + g * g * cm.yy(q);
}

/// Golden-section minimization of inference_residual over g in [lo, hi].
/// Independent of the closed form; used to cross-check it.
template <typename Scalar>
ConditionalVariance<Scalar> conditional_variance_numeric(const CorrelationMatrix<Scalar>& cm, Quadrature q,
                                                         Scalar lo = Scalar(-10), Scalar hi = Scalar(10),
                                                         Scalar tol = Scalar(1e-12)) {
  using std::abs;
  using std::sqrt;
  const Scalar inv_phi = (sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  Scalar a = lo, b = hi;
  Scalar c = b - inv_phi * (b - a);
  Scalar d = a + inv_phi * (b - a);
  Scalar fc = inference_residual(cm, q, c);
  Scalar fd = inference_residual(cm, q, d);
  while (abs(b - a) > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = inference_residual(cm, q, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = inference_residual(cm, q, d);
    }
  }
  const Scalar g = (a + b) / Scalar(2);
  return {inference_residual(cm, q, g), g};
}

template <typename Scalar>
EprReport<Scalar> degree_of_epr(const CorrelationMatrix<Scalar>& cm) {
  const auto plus = conditional_variance(cm, Quadrature::amplitude);
  const auto minus = conditional_variance(cm, Quadrature::phase);
  return {plus.variance, minus.variance, plus.gain, minus.gain, plus.variance * minus.variance};
}

/// Degree of EPR paradox for pure, equally squeezed inputs (average amplitude
/// variance v_ave) after equal efficiency eta on both beams. E = 1 at eta = 0.5
/// for any squeezing.
template <typename Scalar>
Scalar epr_vs_loss(Scalar v_ave, Scalar eta) {
  if (!(v_ave > Scalar(0) && v_ave <= Scalar(1))) throw std::invalid_argument("v_ave must lie in (0, 1]");
  if (!(eta >= Scalar(0) && eta <= Scalar(1))) throw std::invalid_argument("efficiency outside [0, 1]");
  const Scalar excess = v_ave + Scalar(1) / v_ave - Scalar(2);
  const Scalar root = Scalar(1) - eta + (Scalar(2) * eta - Scalar(1)) / (eta * excess + Scalar(2));
  return Scalar(4) * root * root;
}

/// Degree of EPR paradox of a symmetric, unbiased state located at
/// (n_min, n_excess) on the photon number diagram.
template <typename Scalar>
Scalar epr_from_photons(Scalar n_min, Scalar n_excess) {
  if (!(n_min >= Scalar(0)) || !(n_excess >= Scalar(0))) {
    throw std::invalid_argument("photon numbers must be non-negative");
  }
  using std::sqrt;
  const Scalar m1 = n_min + Scalar(1);
  const Scalar insep = m1 - sqrt(m1 * m1 - Scalar(1));
  const Scalar ratio = (Scalar(2) * n_excess * insep + Scalar(1)) / (n_excess + n_min + Scalar(1));
  return ratio * ratio;
}

/// Limits of epr_from_photons at fixed I. The pure limit 4I^2/(I^2+1)^2 is
/// the n_excess -> 0 limit of the photon-diagram expression; the form
/// 4I^2/(I+1)^2 sometimes quoted for it does not follow from that expression.
template <typename Scalar>
EprAsymptotes<Scalar> epr_asymptotes(Scalar insep) {
  if (!(insep > Scalar(0) && insep <= Scalar(1))) throw std::invalid_argument("I must lie in (0, 1]");
  const Scalar i2 = insep * insep;
  const Scalar d = i2 + Scalar(1);
  return {Scalar(4) * i2 / (d * d), Scalar(4) * i2};
}

}  // namespace gaussent

#endif  // GAUSSENT_EPR_HPP
