#ifndef GAUSSENT_IO_HPP
#define GAUSSENT_IO_HPP

#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"

#include "gaussent/epr.hpp"
#include "gaussent/photon_number.hpp"
#include "gaussent/protocols.hpp"
#include "gaussent/separability.hpp"
#include "gaussent/state.hpp"

namespace gaussent {

using Json = nlohmann::ordered_json;

/// { "order": ["xp","xm","yp","ym"], "matrix": [[...4x4...]] }
Json to_json(const CorrelationMatrix4& cm);
CorrelationMatrix4 correlation_matrix_from_json(const Json& j);

Json to_json(const TwoModeState<double>& state);
Json to_json(const InseparabilityReport<double>& report);
Json to_json(const EprReport<double>& report);
Json to_json(const PhotonDecomposition<double>& d);
Json to_json(const RestrictionCheck<double>& r);
Json to_json(const ContourGrid<double>& grid);

/// n_min,n_excess,value rows, n_min-major. NaN cells are written as "nan".
std::string contour_grid_to_csv(const ContourGrid<double>& grid);

/// Everything the library can say about one correlation matrix. Quantities
/// that are undefined for the matrix are null with an accompanying note.
Json analyze_to_json(const CorrelationMatrix4& cm);

/// Correlation matrices from a published measurement, keyed by sideband
/// frequency label ("3.5MHz", "6.5MHz").
struct AnchorSet {
  std::map<std::string, CorrelationMatrix4> matrices;
  double statistical_error{0.05};
};

/// The two published matrices with signed cross terms (amplitude
/// anti-correlated, phase correlated).
AnchorSet builtin_anchors();

Json to_json(const AnchorSet& anchors);
AnchorSet anchors_from_json(const Json& j);

/// Environment variable that overrides the fixture path.
inline constexpr const char* fixtures_env_var = "GAUSSENT_FIXTURES";

AnchorSet load_anchors(const std::filesystem::path& path);

/// Loads a correlation matrix from a JSON file that holds either a single
/// matrix object or an anchor set (then `key` selects the entry).
CorrelationMatrix4 load_correlation_matrix(const std::filesystem::path& path, const std::string& key = "");

Json parse_json_text(const std::string& text, const std::string& origin);

}  // namespace gaussent

#endif  // GAUSSENT_IO_HPP
