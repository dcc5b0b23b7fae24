#ifndef GAUSSENT_CORRELATION_MATRIX_HPP
#define GAUSSENT_CORRELATION_MATRIX_HPP

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "gaussent/core.hpp"

namespace gaussent {

/// Symmetrized second moments of the quadrature fluctuations of two beams,
/// ordered (X+x, X-x, X+y, X-y), in shot-noise units (vacuum = identity).
///
/// Construction enforces symmetry and positive diagonal only. Physicality
/// (the uncertainty relation) is a separate check, see is_physical(), so
/// that measured matrices with rounding errors can still be analyzed.
template <typename Scalar>
class CorrelationMatrix {
 public:
  using MatrixType = Eigen::Matrix<Scalar, 4, 4>;

  static constexpr double symmetry_tolerance = 1e-12;

  CorrelationMatrix() : m_(MatrixType::Identity()) {}

  explicit CorrelationMatrix(const MatrixType& m) : m_(m) {
    for (int i = 0; i < 4; ++i) {
      if (!(m_(i, i) > Scalar(0))) {
        std::ostringstream os;
        os << "correlation matrix diagonal entry " << i << " is not positive (" << m_(i, i) << ")";
        throw std::invalid_argument(os.str());
      }
      for (int j = i + 1; j < 4; ++j) {
        using std::abs;
        if (!(abs(m_(i, j) - m_(j, i)) <= Scalar(symmetry_tolerance))) {
          std::ostringstream os;
          os << "correlation matrix is not symmetric at (" << i << "," << j << "): " << m_(i, j)
             << " vs " << m_(j, i);
          throw std::invalid_argument(os.str());
        }
      }
    }
  }

  static CorrelationMatrix vacuum() { return CorrelationMatrix(); }

  /// Block form with no cross-quadrature terms; x and y may differ.
  static CorrelationMatrix standard_form(Scalar xx_plus, Scalar yy_plus, Scalar xx_minus, Scalar yy_minus,
                                         Scalar xy_plus, Scalar xy_minus) {
    MatrixType m = MatrixType::Zero();
    m(idx::xp, idx::xp) = xx_plus;
    m(idx::yp, idx::yp) = yy_plus;
    m(idx::xm, idx::xm) = xx_minus;
    m(idx::ym, idx::ym) = yy_minus;
    m(idx::xp, idx::yp) = m(idx::yp, idx::xp) = xy_plus;
    m(idx::xm, idx::ym) = m(idx::ym, idx::xm) = xy_minus;
    return CorrelationMatrix(m);
  }

  /// Beams x and y interchangeable, no cross-quadrature terms.
  static CorrelationMatrix symmetric_form(Scalar amplitude_var, Scalar phase_var, Scalar xy_plus, Scalar xy_minus) {
    return standard_form(amplitude_var, amplitude_var, phase_var, phase_var, xy_plus, xy_minus);
  }

  const MatrixType& matrix() const noexcept { return m_; }
  Scalar operator()(int i, int j) const { return m_(i, j); }

  Scalar xx(Quadrature q) const { return m_(x_index(q), x_index(q)); }
  Scalar yy(Quadrature q) const { return m_(y_index(q), y_index(q)); }
  Scalar xy(Quadrature q) const { return m_(x_index(q), y_index(q)); }

  friend bool operator==(const CorrelationMatrix& a, const CorrelationMatrix& b) { return a.m_ == b.m_; }

 private:
  MatrixType m_;
};

using CorrelationMatrix4 = CorrelationMatrix<double>;

/// Block-diagonal symplectic form: [[0, 1], [-1, 0]] per beam.
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 4> symplectic_form() {
  Eigen::Matrix<Scalar, 4, 4> omega = Eigen::Matrix<Scalar, 4, 4>::Zero();
  omega(idx::xp, idx::xm) = Scalar(1);
  omega(idx::xm, idx::xp) = Scalar(-1);
  omega(idx::yp, idx::ym) = Scalar(1);
  omega(idx::ym, idx::yp) = Scalar(-1);
  return omega;
}

/// Smallest eigenvalue of CM + i*Omega. Non-negative iff the matrix respects
/// the quadrature commutator [X+, X-] = 2i.
template <typename Scalar>
Scalar physicality_margin(const CorrelationMatrix<Scalar>& cm) {
  using Complex = std::complex<Scalar>;
  using ComplexMatrix = Eigen::Matrix<Complex, 4, 4>;
  ComplexMatrix h = cm.matrix().template cast<Complex>() + Complex(0, 1) * symplectic_form<Scalar>().template cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

template <typename Scalar>
bool is_physical(const CorrelationMatrix<Scalar>& cm, Scalar tol = Scalar(1e-9)) {
  return physicality_margin(cm) >= -tol;
}

/// True iff cross-quadrature entries vanish and both beams carry the same
/// per-quadrature variance (within tol).
template <typename Scalar>
bool check_symmetric_form(const CorrelationMatrix<Scalar>& cm, Scalar tol = Scalar(1e-9)) {
  using std::abs;
  const auto& m = cm.matrix();
  constexpr int plus[] = {idx::xp, idx::yp};
  constexpr int minus[] = {idx::xm, idx::ym};
  for (int p : plus)
    for (int q : minus)
      if (abs(m(p, q)) > tol) return false;
  return abs(cm.xx(Quadrature::amplitude) - cm.yy(Quadrature::amplitude)) <= tol &&
         abs(cm.xx(Quadrature::phase) - cm.yy(Quadrature::phase)) <= tol;
}

/// True iff cross-quadrature entries vanish (x and y may differ).
template <typename Scalar>
bool check_block_form(const CorrelationMatrix<Scalar>& cm, Scalar tol = Scalar(1e-9)) {
  using std::abs;
  const auto& m = cm.matrix();
  return abs(m(idx::xp, idx::xm)) <= tol && abs(m(idx::xp, idx::ym)) <= tol && abs(m(idx::yp, idx::xm)) <= tol &&
         abs(m(idx::yp, idx::ym)) <= tol;
}

/// Variance of the two-beam sum or difference of one quadrature, normalized
/// to the two-beam shot noise: <(dXx +- dXy)^2>/2 = (Vx + Vy)/2 +- Cxy.
template <typename Scalar>
Scalar sum_diff_variance(const CorrelationMatrix<Scalar>& cm, Quadrature q, Combination c) {
  const Scalar mean = (cm.xx(q) + cm.yy(q)) / Scalar(2);
  return c == Combination::sum ? mean + cm.xy(q) : mean - cm.xy(q);
}

/// The smaller of the sum and difference variances for one quadrature.
template <typename Scalar>
Scalar min_sum_diff_variance(const CorrelationMatrix<Scalar>& cm, Quadrature q) {
  using std::abs;
  return (cm.xx(q) + cm.yy(q)) / Scalar(2) - abs(cm.xy(q));
}

/// Equal local squeezing of both beams: (X+, X-) -> (g X+, X- / g).
template <typename Scalar>
CorrelationMatrix<Scalar> local_squeeze(const CorrelationMatrix<Scalar>& cm, Scalar gain) {
  if (!(gain > Scalar(0))) throw std::invalid_argument("local squeezing gain must be positive");
  Eigen::Matrix<Scalar, 4, 1> s;
  s << gain, Scalar(1) / gain, gain, Scalar(1) / gain;
  typename CorrelationMatrix<Scalar>::MatrixType m = s.asDiagonal() * cm.matrix() * s.asDiagonal();
  return CorrelationMatrix<Scalar>(m);
}

}  // namespace gaussent

#endif  // GAUSSENT_CORRELATION_MATRIX_HPP
