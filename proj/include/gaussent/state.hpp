#ifndef GAUSSENT_STATE_HPP
#define GAUSSENT_STATE_HPP

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "gaussent/correlation_matrix.hpp"

namespace gaussent {

/// Amplitude and phase quadrature variances of one beam (vacuum = 1).
template <typename Scalar>
struct QuadratureVariancePair {
  Scalar v_plus{1};
  Scalar v_minus{1};

  Scalar uncertainty_product() const { return v_plus * v_minus; }
};

/// Throws unless both variances are positive and their product is at least 1 - tol.
template <typename Scalar>
void require_physical(const QuadratureVariancePair<Scalar>& v, Scalar tol = Scalar(1e-9)) {
  if (!(v.v_plus > Scalar(0)) || !(v.v_minus > Scalar(0))) {
    std::ostringstream os;
    os << "quadrature variances must be positive (got " << v.v_plus << ", " << v.v_minus << ")";
    throw std::invalid_argument(os.str());
  }
  if (v.uncertainty_product() < Scalar(1) - tol) {
    std::ostringstream os;
    os << "variance pair (" << v.v_plus << ", " << v.v_minus << ") violates the uncertainty product: "
       << v.uncertainty_product() << " < 1";
    throw std::invalid_argument(os.str());
  }
}

/// One optical sideband mode: variance pair plus coherent amplitude
/// (alpha_plus = Re alpha(w), alpha_minus = Im alpha(w)).
template <typename Scalar>
struct SqueezedBeam {
  QuadratureVariancePair<Scalar> variances{};
  Scalar alpha_plus{0};
  Scalar alpha_minus{0};

  /// Minimum-uncertainty amplitude-squeezed vacuum with amplitude variance v.
  static SqueezedBeam pure(Scalar v) { return SqueezedBeam{{v, Scalar(1) / v}, Scalar(0), Scalar(0)}; }
};

template <typename Scalar>
struct TwoModeState {
  Eigen::Matrix<Scalar, 2, 1> alpha_x = Eigen::Matrix<Scalar, 2, 1>::Zero();  // (alpha+, alpha-)
  Eigen::Matrix<Scalar, 2, 1> alpha_y = Eigen::Matrix<Scalar, 2, 1>::Zero();
  CorrelationMatrix<Scalar> cm{};
};

using TwoModeStated = TwoModeState<double>;
using SqueezedBeamd = SqueezedBeam<double>;

/// Interferes two amplitude-squeezed beams with relative phase pi/2 on a
/// 50/50 beam splitter. Output quadratures:
///   X+x = (X+1 - X-2)/sqrt2   X-x = (X-1 + X+2)/sqrt2
///   X+y = (X+1 + X-2)/sqrt2   X-y = (X-1 - X+2)/sqrt2
/// so that X+x + X+y and X-x - X-y carry only the squeezed quadratures.
template <typename Scalar>
TwoModeState<Scalar> entangle_on_beamsplitter(const SqueezedBeam<Scalar>& sqz1, const SqueezedBeam<Scalar>& sqz2) {
  require_physical(sqz1.variances);
  require_physical(sqz2.variances);
  const Scalar half(0.5);
  const auto& v1 = sqz1.variances;
  const auto& v2 = sqz2.variances;

  const Scalar amplitude_var = half * (v1.v_plus + v2.v_minus);
  const Scalar phase_var = half * (v1.v_minus + v2.v_plus);
  const Scalar xy_plus = half * (v1.v_plus - v2.v_minus);
  const Scalar xy_minus = half * (v1.v_minus - v2.v_plus);

  using std::sqrt;
  const Scalar r = Scalar(1) / sqrt(Scalar(2));
  TwoModeState<Scalar> out;
  out.cm = CorrelationMatrix<Scalar>::symmetric_form(amplitude_var, phase_var, xy_plus, xy_minus);
  out.alpha_x << r * (sqz1.alpha_plus - sqz2.alpha_minus), r * (sqz1.alpha_minus + sqz2.alpha_plus);
  out.alpha_y << r * (sqz1.alpha_plus + sqz2.alpha_minus), r * (sqz1.alpha_minus - sqz2.alpha_plus);
  return out;
}

/// Independent vacuum admixture on each beam (beam splitter of transmissivity
/// eta against vacuum). Same-beam entries map V -> eta V + (1 - eta) on the
/// diagonal, cross-beam entries scale by sqrt(eta_x eta_y).
template <typename Scalar>
CorrelationMatrix<Scalar> apply_loss(const CorrelationMatrix<Scalar>& cm, Scalar eta_x, Scalar eta_y) {
  for (Scalar eta : {eta_x, eta_y}) {
    if (!(eta >= Scalar(0) && eta <= Scalar(1))) {
      std::ostringstream os;
      os << "detection efficiency " << eta << " outside [0, 1]";
      throw std::invalid_argument(os.str());
    }
  }
  using std::sqrt;
  const Scalar sx = sqrt(eta_x);
  const Scalar sy = sqrt(eta_y);
  const Scalar scale[4] = {sx, sx, sy, sy};
  const Scalar eta[4] = {eta_x, eta_x, eta_y, eta_y};
  typename CorrelationMatrix<Scalar>::MatrixType m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      // Same-beam products use eta directly so that eta = 0/1 are exact.
      const bool same_beam = (i < 2) == (j < 2);
      m(i, j) = (same_beam ? eta[i] : scale[i] * scale[j]) * cm(i, j);
    }
    m(i, i) += Scalar(1) - eta[i];
  }
  return CorrelationMatrix<Scalar>(m);
}

template <typename Scalar>
TwoModeState<Scalar> apply_loss(const TwoModeState<Scalar>& state, Scalar eta_x, Scalar eta_y) {
  TwoModeState<Scalar> out;
  out.cm = apply_loss(state.cm, eta_x, eta_y);
  using std::sqrt;
  out.alpha_x = sqrt(eta_x) * state.alpha_x;
  out.alpha_y = sqrt(eta_y) * state.alpha_y;
  return out;
}

template <typename Scalar>
Scalar sum_diff_variance(const TwoModeState<Scalar>& state, Quadrature q, Combination c) {
  return sum_diff_variance(state.cm, q, c);
}

}  // namespace gaussent

#endif  // GAUSSENT_STATE_HPP
