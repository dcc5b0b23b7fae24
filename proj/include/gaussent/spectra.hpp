#ifndef GAUSSENT_SPECTRA_HPP
#define GAUSSENT_SPECTRA_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gaussent/correlation_matrix.hpp"

namespace gaussent {

/// Measured (or synthesized) variances at one sideband frequency, linear
/// shot-noise units. v_sum_plus is the amplitude-quadrature sum variance,
/// v_diff_minus the phase-quadrature difference variance, both normalized to
/// the two-beam shot noise.
struct SpectrumRow {
  double frequency{};  // MHz
  double vx_plus{1};
  double vx_minus{1};
  double vy_plus{1};
  double vy_minus{1};
  double v_sum_plus{1};
  double v_diff_minus{1};
};

struct DerivedRow {
  double frequency{};
  double insep{};
  double epr{};
  double n_min{};
  double n_bias{};
  double n_excess{};
  double n_total{};
  double c_xy_plus{};
  double c_xy_minus{};
};

enum class Units { linear, db };

/// Malformed spectra input; message names the row and column.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure to read or write a file; message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view spectra_header =
    "frequency_mhz,vx_plus,vx_minus,vy_plus,vy_minus,v_sum_plus,v_diff_minus";

/// Parses spectra CSV (header required). dB cells are converted with
/// v = 10^(dB/10). Rows are returned sorted by frequency.
std::vector<SpectrumRow> parse_spectra(std::string_view text, Units units = Units::linear);

std::string read_text_file(const std::filesystem::path& path);

/// Symmetric correlation matrix for one row. Mode variances are averaged over
/// the two beams; the cross terms are chosen so the amplitude sum and phase
/// difference variances of the matrix equal the measured ones.
CorrelationMatrix4 cm_at_frequency(const SpectrumRow& row);

struct DerivationFailure {
  double frequency{};
  std::string reason;
};

struct DerivationResult {
  std::vector<DerivedRow> rows;
  std::vector<DerivationFailure> failures;
};

DerivedRow derive_row(const SpectrumRow& row);

/// Derives I, E, the photon decomposition and the cross correlations per row.
/// Rows that cannot be analyzed are reported in `failures` and skipped.
DerivationResult derive_spectra(const std::vector<SpectrumRow>& rows);

/// Qualitative spectrum model: two identical pure OPA outputs with
///   V(w) = 1 - (1 - v_floor) / (1 + (w / opa_bandwidth)^2)
/// interfered on the beam splitter and attenuated by eta, plus laser
/// relaxation-oscillation noise common to the amplitude quadratures of both
/// beams (second-order resonance at relax_osc, Q = 1, peak relax_amplitude).
struct SynthesisParams {
  double v_floor{0.4};
  double opa_bandwidth_mhz{12.0};
  double relax_osc_mhz{1.5};
  double relax_amplitude{20.0};
  double eta{0.85};
  std::vector<double> freq_grid;  // MHz; empty -> 2.5..10 MHz in 0.1 MHz steps
};

double relaxation_noise(const SynthesisParams& params, double frequency);

std::vector<SpectrumRow> synthesize_spectra(const SynthesisParams& params);

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(std::string_view token);

std::string derived_to_csv(const std::vector<DerivedRow>& rows);
std::vector<DerivedRow> parse_derived_csv(std::string_view text);
std::string derived_to_json(const std::vector<DerivedRow>& rows);
std::string spectra_to_csv(const std::vector<SpectrumRow>& rows);

/// Writes derived rows in DerivedRow field order. Throws IoError naming the path.
void write_outputs(const std::vector<DerivedRow>& rows, const std::filesystem::path& path, OutputFormat format);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

/// Shortest round-trip decimal representation, independent of locale.
std::string format_number(double value);

}  // namespace gaussent

#endif  // GAUSSENT_SPECTRA_HPP
