#include "gaussent/spectra.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gaussent/epr.hpp"
#include "gaussent/io.hpp"
#include "gaussent/photon_number.hpp"
#include "gaussent/separability.hpp"
#include "gaussent/state.hpp"

namespace gaussent {

namespace {

constexpr std::array<std::string_view, 7> kSpectraColumns = {
    "frequency_mhz", "vx_plus", "vx_minus", "vy_plus", "vy_minus", "v_sum_plus", "v_diff_minus"};

constexpr std::array<std::string_view, 9> kDerivedColumns = {
    "frequency_mhz", "I", "E", "n_min", "n_bias", "n_excess", "n_total", "c_xy_plus", "c_xy_minus"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view cell, double& value) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  return ec == std::errc() && ptr == cell.data() + cell.size() && !cell.empty();
}

// Splits text into (line number, content) pairs, skipping blank lines.
std::vector<std::pair<std::size_t, std::string_view>> nonblank_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    if (!trim(line).empty()) out.emplace_back(line_no, line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

template <std::size_t N>
std::array<std::size_t, N> map_header(std::string_view header_line, const std::array<std::string_view, N>& columns) {
  const auto header = split(header_line, ',');
  std::array<std::size_t, N> positions{};
  for (std::size_t c = 0; c < N; ++c) {
    const auto it = std::find(header.begin(), header.end(), columns[c]);
    if (it == header.end()) throw ParseError("header: missing column '" + std::string(columns[c]) + "'");
    positions[c] = static_cast<std::size_t>(it - header.begin());
  }
  return positions;
}

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::vector<SpectrumRow> parse_spectra(std::string_view text, Units units) {
  const auto lines = nonblank_lines(text);
  if (lines.empty()) throw ParseError("header: input is empty");
  const auto positions = map_header(lines.front().second, kSpectraColumns);
  const std::size_t width = split(lines.front().second, ',').size();

  std::vector<SpectrumRow> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto [line_no, line] = lines[l];
    const auto cells = split(line, ',');
    if (cells.size() != width) {
      std::ostringstream os;
      os << "line " << line_no << ": expected " << width << " cells, got " << cells.size();
      throw ParseError(os.str());
    }
    std::array<double, kSpectraColumns.size()> values{};
    for (std::size_t c = 0; c < kSpectraColumns.size(); ++c) {
      const std::string_view cell = cells[positions[c]];
      double v = 0;
      if (!parse_double(cell, v) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "line " << line_no << ", column '" << kSpectraColumns[c] << "': non-numeric value '" << cell << "'";
        throw ParseError(os.str());
      }
      if (c > 0 && units == Units::db) v = std::pow(10.0, v / 10.0);
      if (!(v > 0)) {
        std::ostringstream os;
        os << "line " << line_no << ", column '" << kSpectraColumns[c] << "': "
           << (c == 0 ? "frequency" : "variance") << " must be positive (got " << cell << ")";
        throw ParseError(os.str());
      }
      values[c] = v;
    }
    rows.push_back({values[0], values[1], values[2], values[3], values[4], values[5], values[6]});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SpectrumRow& a, const SpectrumRow& b) { return a.frequency < b.frequency; });
  return rows;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

CorrelationMatrix4 cm_at_frequency(const SpectrumRow& row) {
  const double amplitude_var = (row.vx_plus + row.vy_plus) / 2.0;
  const double phase_var = (row.vx_minus + row.vy_minus) / 2.0;
  return CorrelationMatrix4::symmetric_form(amplitude_var, phase_var, row.v_sum_plus - amplitude_var,
                                            phase_var - row.v_diff_minus);
}

DerivedRow derive_row(const SpectrumRow& row) {
  const auto cm = cm_at_frequency(row);
  const auto photons = decompose(cm);
  DerivedRow out;
  out.frequency = row.frequency;
  out.insep = degree_of_inseparability(cm);
  out.epr = degree_of_epr(cm).degree;
  out.n_min = photons.n_min;
  out.n_bias = photons.n_bias;
  out.n_excess = photons.n_excess;
  out.n_total = photons.n_total;
  out.c_xy_plus = cm.xy(Quadrature::amplitude);
  out.c_xy_minus = cm.xy(Quadrature::phase);
  return out;
}

DerivationResult derive_spectra(const std::vector<SpectrumRow>& rows) {
  DerivationResult result;
  result.rows.reserve(rows.size());
  for (const auto& row : rows) {
    try {
      result.rows.push_back(derive_row(row));
    } catch (const std::exception& e) {
      result.failures.push_back({row.frequency, e.what()});
    }
  }
  return result;
}

double relaxation_noise(const SynthesisParams& p, double frequency) {
  const double f2 = frequency * frequency;
  const double r2 = p.relax_osc_mhz * p.relax_osc_mhz;
  const double detune = f2 - r2;
  return p.relax_amplitude * r2 * r2 / (detune * detune + f2 * r2);
}

std::vector<SpectrumRow> synthesize_spectra(const SynthesisParams& p) {
  if (!(p.v_floor > 0 && p.v_floor <= 1)) throw std::invalid_argument("v_floor must lie in (0, 1]");
  if (!(p.opa_bandwidth_mhz > 0)) throw std::invalid_argument("opa_bandwidth_mhz must be positive");
  if (!(p.relax_osc_mhz > 0)) throw std::invalid_argument("relax_osc_mhz must be positive");
  if (!(p.relax_amplitude >= 0)) throw std::invalid_argument("relax_amplitude must be non-negative");
  if (!(p.eta > 0 && p.eta <= 1)) throw std::invalid_argument("eta must lie in (0, 1]");

  std::vector<double> grid = p.freq_grid;
  if (grid.empty()) {
    for (int i = 25; i <= 100; ++i) grid.push_back(i / 10.0);
  }
  std::vector<SpectrumRow> rows;
  rows.reserve(grid.size());
  for (double f : grid) {
    if (!(f > 0)) throw std::invalid_argument("frequency grid must be positive");
    const double x = f / p.opa_bandwidth_mhz;
    const double v = 1.0 - (1.0 - p.v_floor) / (1.0 + x * x);
    const auto beam = SqueezedBeam<double>::pure(v);
    const auto lossy = apply_loss(entangle_on_beamsplitter(beam, beam).cm, p.eta, p.eta);

    // Common-mode amplitude noise adds equally to both beams and their covariance.
    const double noise = relaxation_noise(p, f);
    auto m = lossy.matrix();
    m(idx::xp, idx::xp) += noise;
    m(idx::yp, idx::yp) += noise;
    m(idx::xp, idx::yp) += noise;
    m(idx::yp, idx::xp) += noise;
    const CorrelationMatrix4 cm(m);

    rows.push_back({f, cm(idx::xp, idx::xp), cm(idx::xm, idx::xm), cm(idx::yp, idx::yp), cm(idx::ym, idx::ym),
                    sum_diff_variance(cm, Quadrature::amplitude, Combination::sum),
                    sum_diff_variance(cm, Quadrature::phase, Combination::difference)});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SpectrumRow& a, const SpectrumRow& b) { return a.frequency < b.frequency; });
  return rows;
}

OutputFormat parse_output_format(std::string_view token) {
  if (token == "csv") return OutputFormat::csv;
  if (token == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + std::string(token) + "' (expected csv or json)");
}

std::string derived_to_csv(const std::vector<DerivedRow>& rows) {
  std::string out;
  for (std::size_t c = 0; c < kDerivedColumns.size(); ++c) {
    if (c) out += ',';
    out += kDerivedColumns[c];
  }
  out += '\n';
  for (const auto& r : rows) {
    append_row(out, {r.frequency, r.insep, r.epr, r.n_min, r.n_bias, r.n_excess, r.n_total, r.c_xy_plus,
                     r.c_xy_minus});
  }
  return out;
}

std::vector<DerivedRow> parse_derived_csv(std::string_view text) {
  const auto lines = nonblank_lines(text);
  if (lines.empty()) throw ParseError("header: input is empty");
  const auto positions = map_header(lines.front().second, kDerivedColumns);
  std::vector<DerivedRow> rows;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto [line_no, line] = lines[l];
    const auto cells = split(line, ',');
    std::array<double, kDerivedColumns.size()> v{};
    for (std::size_t c = 0; c < kDerivedColumns.size(); ++c) {
      if (positions[c] >= cells.size() || !parse_double(cells[positions[c]], v[c])) {
        std::ostringstream os;
        os << "line " << line_no << ", column '" << kDerivedColumns[c] << "': missing or non-numeric value";
        throw ParseError(os.str());
      }
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
  }
  return rows;
}

std::string derived_to_json(const std::vector<DerivedRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json o;
    o["frequency_mhz"] = r.frequency;
    o["I"] = r.insep;
    o["E"] = r.epr;
    o["n_min"] = r.n_min;
    o["n_bias"] = r.n_bias;
    o["n_excess"] = r.n_excess;
    o["n_total"] = r.n_total;
    o["c_xy_plus"] = r.c_xy_plus;
    o["c_xy_minus"] = r.c_xy_minus;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string spectra_to_csv(const std::vector<SpectrumRow>& rows) {
  std::string out(spectra_header);
  out += '\n';
  for (const auto& r : rows) {
    append_row(out, {r.frequency, r.vx_plus, r.vx_minus, r.vy_plus, r.vy_minus, r.v_sum_plus, r.v_diff_minus});
  }
  return out;
}

void write_outputs(const std::vector<DerivedRow>& rows, const std::filesystem::path& path, OutputFormat format) {
  write_text_file(path, format == OutputFormat::csv ? derived_to_csv(rows) : derived_to_json(rows));
}

}  // namespace gaussent
