#ifndef GAUSSENT_CORE_HPP
#define GAUSSENT_CORE_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaussent {

/// Amplitude (+) or phase (-) quadrature.
enum class Quadrature { amplitude, phase };

/// Which two-beam combination a variance refers to: x + y or x - y.
enum class Combination { sum, difference };

/// Row/column positions in a correlation matrix ordered (X+x, X-x, X+y, X-y).
namespace idx {
inline constexpr int xp = 0;
inline constexpr int xm = 1;
inline constexpr int yp = 2;
inline constexpr int ym = 3;
}  // namespace idx

constexpr int x_index(Quadrature q) noexcept { return q == Quadrature::amplitude ? idx::xp : idx::xm; }
constexpr int y_index(Quadrature q) noexcept { return q == Quadrature::amplitude ? idx::yp : idx::ym; }

/// A state or parameter set outside the domain of the requested quantity.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature variance at or below shot noise where a bias parameter needs it above.
class DegenerateStateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The amplitude and phase bias parameters disagree, so the matrix is not in standard form.
class InconsistentBiasError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline Quadrature parse_quadrature(std::string_view token) {
  if (token == "+" || token == "plus" || token == "amplitude") return Quadrature::amplitude;
  if (token == "-" || token == "minus" || token == "phase") return Quadrature::phase;
  throw std::invalid_argument("unknown quadrature token '" + std::string(token) + "'");
}

inline Combination parse_combination(std::string_view token) {
  if (token == "sum" || token == "+") return Combination::sum;
  if (token == "diff" || token == "difference" || token == "-") return Combination::difference;
  throw std::invalid_argument("unknown combination token '" + std::string(token) + "'");
}

}  // namespace gaussent

#endif  // GAUSSENT_CORE_HPP
