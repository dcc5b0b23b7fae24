#ifndef GAUSSENT_SEPARABILITY_HPP
#define GAUSSENT_SEPARABILITY_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "gaussent/correlation_matrix.hpp"

namespace gaussent {

/// Default absolute tolerance for the standard-form restriction checks; the
/// statistical error quoted for the measured matrix entries.
inline constexpr double restriction_tolerance = 0.05;

/// Outcome of the inseparability analysis of one correlation matrix.
template <typename Scalar>
struct InseparabilityReport {
  Scalar k{1};
  Scalar sum_lhs{};      // D+ + D-
  Scalar sum_rhs{};      // 2 (k^2 + 1/k^2)
  bool sum_satisfied{};  // sum_lhs < sum_rhs, reported regardless of applicability
  bool sum_applicable{};
  bool product_applicable{};
  Scalar degree{};  // entangled iff < 1
};

namespace detail {

template <typename Scalar>
Scalar quartic_bias(Scalar xx, Scalar yy) {
  using std::sqrt;
  return sqrt(sqrt((yy - Scalar(1)) / (xx - Scalar(1))));
}

}  // namespace detail

/// Bias parameter k = ((C++yy - 1)/(C++xx - 1))^(1/4), which must agree with
/// the phase-quadrature expression to within tol.
template <typename Scalar>
Scalar k_parameter(const CorrelationMatrix<Scalar>& cm, Scalar tol = Scalar(1e-6)) {
  for (Quadrature q : {Quadrature::amplitude, Quadrature::phase}) {
    if (!(cm.xx(q) > Scalar(1)) || !(cm.yy(q) > Scalar(1))) {
      throw DegenerateStateError("degenerate: quadrature at or below shot noise");
    }
  }
  using std::abs;
  const Scalar k_plus = detail::quartic_bias(cm.xx(Quadrature::amplitude), cm.yy(Quadrature::amplitude));
  const Scalar k_minus = detail::quartic_bias(cm.xx(Quadrature::phase), cm.yy(Quadrature::phase));
  if (abs(k_plus - k_minus) > tol) {
    std::ostringstream os;
    os << "amplitude and phase bias parameters disagree (" << k_plus << " vs " << k_minus
       << "); the matrix is not in standard form";
    throw InconsistentBiasError(os.str());
  }
  return k_plus;
}

/// The amplitude-quadrature bias parameter when defined, 1 otherwise. Used
/// where a k is needed for matrices that need not be in standard form.
template <typename Scalar>
Scalar amplitude_bias_or_unity(const CorrelationMatrix<Scalar>& cm) {
  const Scalar xx = cm.xx(Quadrature::amplitude);
  const Scalar yy = cm.yy(Quadrature::amplitude);
  if (xx == yy || !(xx > Scalar(1)) || !(yy > Scalar(1))) return Scalar(1);
  return detail::quartic_bias(xx, yy);
}

/// <(k dXx - sgn(Cxy) dXy / k)^2> for one quadrature, expanded in matrix entries.
/// sgn(0) is taken as +1; the expansion is insensitive to it.
template <typename Scalar>
Scalar inseparability_variance(const CorrelationMatrix<Scalar>& cm, Quadrature q, Scalar k) {
  using std::abs;
  const Scalar k2 = k * k;
  return k2 * cm.xx(q) + cm.yy(q) / k2 - Scalar(2) * abs(cm.xy(q));
}

template <typename Scalar>
struct RestrictionCheck {
  bool eq15_ok{};  // equal x/y bias ratio in both quadratures
  bool eq16_ok{};  // equal correlation deficit in both quadratures
  std::string diagnostic;
};

/// Checks the two conditions under which the sum criterion is necessary and
/// sufficient: equal ratios (C_xx - 1)/(C_yy - 1) in both quadratures
/// (relative tolerance ratio_tol), and equal sqrt((C_xx-1)(C_yy-1)) - |C_xy|
/// in both quadratures (absolute tolerance deficit_tol).
template <typename Scalar>
RestrictionCheck<Scalar> standard_form_restrictions(const CorrelationMatrix<Scalar>& cm,
                                                   Scalar deficit_tol = Scalar(restriction_tolerance),
                                                   Scalar ratio_tol = Scalar(1e-3)) {
  RestrictionCheck<Scalar> out;
  if (!check_block_form(cm)) {
    out.diagnostic = "matrix has cross-quadrature terms; reduce it to block form first";
    return out;
  }
  for (Quadrature q : {Quadrature::amplitude, Quadrature::phase}) {
    if (!(cm.xx(q) > Scalar(1)) || !(cm.yy(q) > Scalar(1))) {
      out.diagnostic = "restriction undefined: a quadrature variance is at or below shot noise";
      return out;
    }
  }
  using std::abs;
  using std::sqrt;
  const Scalar ratio_plus = (cm.xx(Quadrature::amplitude) - Scalar(1)) / (cm.yy(Quadrature::amplitude) - Scalar(1));
  const Scalar ratio_minus = (cm.xx(Quadrature::phase) - Scalar(1)) / (cm.yy(Quadrature::phase) - Scalar(1));
  using std::max;
  out.eq15_ok = abs(ratio_plus - ratio_minus) <= ratio_tol * max(abs(ratio_plus), abs(ratio_minus));

  auto deficit = [&](Quadrature q) {
    return sqrt((cm.xx(q) - Scalar(1)) * (cm.yy(q) - Scalar(1))) - abs(cm.xy(q));
  };
  const Scalar d_plus = deficit(Quadrature::amplitude);
  const Scalar d_minus = deficit(Quadrature::phase);
  out.eq16_ok = abs(d_plus - d_minus) <= deficit_tol;
  if (!out.eq15_ok || !out.eq16_ok) {
    std::ostringstream os;
    if (!out.eq15_ok) os << "bias ratios differ (" << ratio_plus << " vs " << ratio_minus << ")";
    if (!out.eq16_ok) {
      if (!out.eq15_ok) os << "; ";
      os << "correlation deficits differ (" << d_plus << " vs " << d_minus << ")";
    }
    out.diagnostic = os.str();
  }
  return out;
}

/// The single restriction required for the product form of the criterion:
///   C++yy C--xx - C++xx C--yy
///     = sqrt(D-/D+) (C++yy - C++xx) + sqrt(D+/D-) (C--xx - C--yy).
template <typename Scalar>
bool product_restriction(const CorrelationMatrix<Scalar>& cm, Scalar tol = Scalar(restriction_tolerance)) {
  if (!check_block_form(cm)) return false;
  const Scalar k = amplitude_bias_or_unity(cm);
  const Scalar d_plus = inseparability_variance(cm, Quadrature::amplitude, k);
  const Scalar d_minus = inseparability_variance(cm, Quadrature::phase, k);
  if (!(d_plus > Scalar(0)) || !(d_minus > Scalar(0))) return false;
  using std::abs;
  using std::sqrt;
  const Scalar xxp = cm.xx(Quadrature::amplitude), yyp = cm.yy(Quadrature::amplitude);
  const Scalar xxm = cm.xx(Quadrature::phase), yym = cm.yy(Quadrature::phase);
  const Scalar lhs = yyp * xxm - xxp * yym;
  const Scalar rhs = sqrt(d_minus / d_plus) * (yyp - xxp) + sqrt(d_plus / d_minus) * (xxm - yym);
  return abs(lhs - rhs) <= tol;
}

template <typename Scalar>
struct SumCriterion {
  Scalar k{1};
  Scalar lhs{};
  Scalar rhs{};
  bool satisfied{};
  bool applicable{};
  bool sign_defaulted{};  // some C_xy was exactly zero
};

/// D+ + D- < 2 (k^2 + 1/k^2). k defaults to the standard-form bias parameter.
template <typename Scalar>
SumCriterion<Scalar> duan_sum_criterion(const CorrelationMatrix<Scalar>& cm, std::optional<Scalar> k = std::nullopt) {
  SumCriterion<Scalar> out;
  out.k = k ? *k : k_parameter(cm);
  if (!(out.k > Scalar(0))) throw std::invalid_argument("bias parameter k must be positive");
  out.lhs = inseparability_variance(cm, Quadrature::amplitude, out.k) +
            inseparability_variance(cm, Quadrature::phase, out.k);
  const Scalar k2 = out.k * out.k;
  out.rhs = Scalar(2) * (k2 + Scalar(1) / k2);
  out.satisfied = out.lhs < out.rhs;
  const auto restrictions = standard_form_restrictions(cm);
  out.applicable = restrictions.eq15_ok && restrictions.eq16_ok;
  out.sign_defaulted = cm.xy(Quadrature::amplitude) == Scalar(0) || cm.xy(Quadrature::phase) == Scalar(0);
  return out;
}

/// Degree of inseparability I; the state is entangled iff I < 1.
///
/// For matrices with x/y symmetry, k = 1 and I is the geometric mean of the
/// smaller sum/difference variance of each quadrature. Otherwise the general
/// product form sqrt(D+ D-)/(k^2 + 1/k^2) is used with the amplitude bias k.
template <typename Scalar>
Scalar degree_of_inseparability(const CorrelationMatrix<Scalar>& cm) {
  using std::sqrt;
  Scalar a, b, norm;
  if (check_symmetric_form(cm)) {
    a = min_sum_diff_variance(cm, Quadrature::amplitude);
    b = min_sum_diff_variance(cm, Quadrature::phase);
    norm = Scalar(1);
  } else {
    const Scalar k = amplitude_bias_or_unity(cm);
    a = inseparability_variance(cm, Quadrature::amplitude, k);
    b = inseparability_variance(cm, Quadrature::phase, k);
    norm = k * k + Scalar(1) / (k * k);
  }
  if (!(a > Scalar(0)) || !(b > Scalar(0))) {
    std::ostringstream os;
    os << "non-positive inseparability variance (" << a << ", " << b << ")";
    throw DomainError(os.str());
  }
  return sqrt(a * b) / norm;
}

template <typename Scalar>
InseparabilityReport<Scalar> analyze_inseparability(const CorrelationMatrix<Scalar>& cm) {
  InseparabilityReport<Scalar> out;
  out.k = amplitude_bias_or_unity(cm);
  out.sum_lhs = inseparability_variance(cm, Quadrature::amplitude, out.k) +
                inseparability_variance(cm, Quadrature::phase, out.k);
  const Scalar k2 = out.k * out.k;
  out.sum_rhs = Scalar(2) * (k2 + Scalar(1) / k2);
  out.sum_satisfied = out.sum_lhs < out.sum_rhs;
  const auto restrictions = standard_form_restrictions(cm);
  out.sum_applicable = restrictions.eq15_ok && restrictions.eq16_ok;
  out.product_applicable = product_restriction(cm);
  out.degree = degree_of_inseparability(cm);
  return out;
}

/// Closed form for equal input squeezing v_ave and equal efficiency eta on
/// both beams: I = eta v_ave + (1 - eta).
template <typename Scalar>
Scalar inseparability_vs_loss(Scalar v_ave, Scalar eta) {
  if (!(v_ave > Scalar(0))) throw std::invalid_argument("average squeezing variance must be positive");
  if (!(eta >= Scalar(0) && eta <= Scalar(1))) throw std::invalid_argument("efficiency outside [0, 1]");
  return eta * v_ave + (Scalar(1) - eta);
}

}  // namespace gaussent

#endif  // GAUSSENT_SEPARABILITY_HPP
