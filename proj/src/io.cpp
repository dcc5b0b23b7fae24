#include "gaussent/io.hpp"

#include <cmath>
#include <limits>

#include "gaussent/spectra.hpp"

namespace gaussent {

namespace {

const char* const kOrder[4] = {"xp", "xm", "yp", "ym"};

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const CorrelationMatrix4& cm) {
  Json j;
  j["order"] = Json::array({kOrder[0], kOrder[1], kOrder[2], kOrder[3]});
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int k = 0; k < 4; ++k) row.push_back(cm(i, k));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j;
}

CorrelationMatrix4 correlation_matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("matrix")) {
    throw std::invalid_argument("correlation matrix JSON needs a \"matrix\" field");
  }
  if (j.contains("order")) {
    const auto& order = j.at("order");
    bool ok = order.is_array() && order.size() == 4;
    for (std::size_t i = 0; ok && i < 4; ++i) ok = order[i].is_string() && order[i].get<std::string>() == kOrder[i];
    if (!ok) throw std::invalid_argument("correlation matrix \"order\" must be [\"xp\",\"xm\",\"yp\",\"ym\"]");
  }
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != 4) throw std::invalid_argument("correlation matrix must have 4 rows");
  CorrelationMatrix4::MatrixType m;
  for (int i = 0; i < 4; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 4) throw std::invalid_argument("correlation matrix rows must have 4 entries");
    for (int k = 0; k < 4; ++k) {
      const auto& cell = row[static_cast<std::size_t>(k)];
      if (!cell.is_number()) throw std::invalid_argument("correlation matrix entries must be numbers");
      m(i, k) = cell.get<double>();
    }
  }
  return CorrelationMatrix4(m);
}

Json to_json(const TwoModeState<double>& state) {
  Json j;
  j["alpha_x"] = Json::array({state.alpha_x(0), state.alpha_x(1)});
  j["alpha_y"] = Json::array({state.alpha_y(0), state.alpha_y(1)});
  j["cm"] = to_json(state.cm);
  return j;
}

Json to_json(const InseparabilityReport<double>& r) {
  Json j;
  j["k"] = r.k;
  j["sum_lhs"] = r.sum_lhs;
  j["sum_rhs"] = r.sum_rhs;
  j["sum_satisfied"] = r.sum_satisfied;
  j["sum_applicable"] = r.sum_applicable;
  j["product_applicable"] = r.product_applicable;
  j["degree"] = r.degree;
  return j;
}

Json to_json(const EprReport<double>& r) {
  Json j;
  j["cv_plus"] = r.cv_plus;
  j["cv_minus"] = r.cv_minus;
  j["g_plus"] = r.g_plus;
  j["g_minus"] = r.g_minus;
  j["degree"] = r.degree;
  return j;
}

Json to_json(const PhotonDecomposition<double>& d) {
  Json j;
  j["n_total"] = d.n_total;
  j["n_pure"] = d.n_pure;
  j["n_min"] = d.n_min;
  j["n_bias"] = d.n_bias;
  j["n_excess"] = d.n_excess;
  j["g_bias_sq"] = d.g_bias_sq;
  return j;
}

Json to_json(const RestrictionCheck<double>& r) {
  Json j;
  j["eq15_ok"] = r.eq15_ok;
  j["eq16_ok"] = r.eq16_ok;
  j["diagnostic"] = r.diagnostic;
  return j;
}

Json to_json(const ContourGrid<double>& grid) {
  Json j;
  j["metric"] = std::string(to_string(grid.metric));
  j["params"] = {{"n_encoding", grid.params.n_encoding}};
  j["nmin_axis"] = grid.nmin_axis;
  j["nexcess_axis"] = grid.nexcess_axis;
  Json values = Json::array();
  for (const auto& row : grid.values) {
    Json r = Json::array();
    for (double v : row) r.push_back(number_or_null(v));
    values.push_back(std::move(r));
  }
  j["values"] = std::move(values);
  return j;
}

std::string contour_grid_to_csv(const ContourGrid<double>& grid) {
  std::string out = "n_min,n_excess,value\n";
  for (std::size_t i = 0; i < grid.nmin_axis.size(); ++i) {
    for (std::size_t k = 0; k < grid.nexcess_axis.size(); ++k) {
      out += format_number(grid.nmin_axis[i]);
      out += ',';
      out += format_number(grid.nexcess_axis[k]);
      out += ',';
      out += format_number(grid.values[i][k]);
      out += '\n';
    }
  }
  return out;
}

Json analyze_to_json(const CorrelationMatrix4& cm) {
  Json j;
  j["matrix"] = to_json(cm);
  j["symmetric_form"] = check_symmetric_form(cm);
  const double margin = physicality_margin(cm);
  j["physical"] = margin >= -1e-9;
  j["physicality_margin"] = margin;
  j["sum_diff_variances"] = {
      {"plus_sum", sum_diff_variance(cm, Quadrature::amplitude, Combination::sum)},
      {"plus_diff", sum_diff_variance(cm, Quadrature::amplitude, Combination::difference)},
      {"minus_sum", sum_diff_variance(cm, Quadrature::phase, Combination::sum)},
      {"minus_diff", sum_diff_variance(cm, Quadrature::phase, Combination::difference)},
  };
  try {
    j["k"] = k_parameter(cm);
  } catch (const DomainError& e) {
    j["k"] = nullptr;
    j["k_note"] = e.what();
  }
  j["restrictions"] = to_json(standard_form_restrictions(cm));
  j["product_restriction"] = product_restriction(cm);

  try {
    const auto insep = analyze_inseparability(cm);
    j["I"] = insep.degree;
    j["inseparability"] = to_json(insep);
    const auto tele = teleport_fidelity(insep.degree);
    j["teleportation"] = {{"fidelity", tele.fidelity}, {"beats_no_cloning", tele.beats_no_cloning}};
  } catch (const DomainError& e) {
    j["I"] = nullptr;
    j["inseparability_note"] = e.what();
  }

  try {
    const auto epr = degree_of_epr(cm);
    j["E"] = epr.degree;
    j["epr"] = to_json(epr);
  } catch (const DomainError& e) {
    j["E"] = nullptr;
    j["epr_note"] = e.what();
  }

  try {
    const auto photons = decompose(cm);
    j["n_min"] = photons.n_min;
    j["n_bias"] = photons.n_bias;
    j["n_excess"] = photons.n_excess;
    j["n_total"] = photons.n_total;
    j["photons"] = to_json(photons);
  } catch (const DomainError& e) {
    j["photons"] = nullptr;
    j["photons_note"] = e.what();
  }
  return j;
}

AnchorSet builtin_anchors() {
  AnchorSet set;
  set.matrices.emplace("3.5MHz", CorrelationMatrix4::symmetric_form(6.2, 6.1, -5.3, 5.7));
  set.matrices.emplace("6.5MHz", CorrelationMatrix4::symmetric_form(3.3, 3.3, -2.9, 2.9));
  set.statistical_error = 0.05;
  return set;
}

Json to_json(const AnchorSet& anchors) {
  Json j;
  for (const auto& [key, cm] : anchors.matrices) j[key] = to_json(cm);
  j["statistical_error"] = anchors.statistical_error;
  return j;
}

AnchorSet anchors_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("anchor file must hold a JSON object");
  AnchorSet set;
  for (const auto& [key, value] : j.items()) {
    if (key == "statistical_error") {
      if (!value.is_number()) throw std::invalid_argument("\"statistical_error\" must be a number");
      set.statistical_error = value.get<double>();
    } else {
      set.matrices.emplace(key, correlation_matrix_from_json(value));
    }
  }
  if (set.matrices.empty()) throw std::invalid_argument("anchor file holds no matrices");
  return set;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in " + origin + ": " + e.what());
  }
}

AnchorSet load_anchors(const std::filesystem::path& path) {
  return anchors_from_json(parse_json_text(read_text_file(path), "'" + path.string() + "'"));
}

CorrelationMatrix4 load_correlation_matrix(const std::filesystem::path& path, const std::string& key) {
  const Json j = parse_json_text(read_text_file(path), "'" + path.string() + "'");
  if (j.is_object() && j.contains("matrix")) {
    if (!key.empty()) throw std::invalid_argument("'" + path.string() + "' holds a single matrix; drop --at");
    return correlation_matrix_from_json(j);
  }
  const AnchorSet set = anchors_from_json(j);
  if (key.empty()) {
    if (set.matrices.size() == 1) return set.matrices.begin()->second;
    std::string keys;
    for (const auto& [k, cm] : set.matrices) keys += (keys.empty() ? "" : ", ") + k;
    throw std::invalid_argument("'" + path.string() + "' holds several matrices; choose one with --at (" + keys + ")");
  }
  const auto it = set.matrices.find(key);
  if (it == set.matrices.end()) throw std::invalid_argument("no matrix keyed '" + key + "' in '" + path.string() + "'");
  return it->second;
}

}  // namespace gaussent
