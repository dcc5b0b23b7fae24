#include "gaussent/cli.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "gaussent/gaussent.hpp"

namespace gaussent::cli {

namespace {

struct Options {
  std::string cm_path;
  std::string at;
  double v = 0.5;
  double v1 = 0;
  double v2 = 0;
  double eta = 1.0;
  int steps = 11;
  std::string metric = "epr";
  double n_encoding = 125;
  double nmin_max = 3;
  double nexcess_max = 4;
  int grid = 200;
  bool db = false;
  bool synthetic = false;
  std::string input;
  std::string out;
  std::string format = "csv";
};

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
  }
}

AnchorSet fixture_anchors() {
  if (const char* path = std::getenv(fixtures_env_var); path && *path) return load_anchors(path);
  return builtin_anchors();
}

std::pair<double, double> input_squeezing(const Options& o, const CLI::App& cmd) {
  const bool pair = cmd.count("--v1") > 0 || cmd.count("--v2") > 0;
  if (pair) {
    if (cmd.count("--v1") == 0 || cmd.count("--v2") == 0) throw std::invalid_argument("--v1 and --v2 go together");
    return {o.v1, o.v2};
  }
  return {o.v, o.v};
}

int cmd_model(const Options& o, const CLI::App& cmd, std::ostream& out) {
  const auto [v1, v2] = input_squeezing(o, cmd);
  const auto state = apply_loss(
      entangle_on_beamsplitter(SqueezedBeam<double>::pure(v1), SqueezedBeam<double>::pure(v2)), o.eta, o.eta);
  Json j;
  j["inputs"] = {{"v1", v1}, {"v2", v2}, {"eta", o.eta}};
  j["state"] = to_json(state);
  j["analysis"] = analyze_to_json(state.cm);
  emit(j.dump(2) + "\n", o, out);
  return exit_ok;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  CorrelationMatrix4 cm;
  if (o.cm_path.empty()) {
    const auto anchors = fixture_anchors();
    const auto it = anchors.matrices.find(o.at);
    if (it == anchors.matrices.end()) {
      throw std::invalid_argument("analyze needs --cm <file>, or --at naming a bundled anchor (3.5MHz, 6.5MHz)");
    }
    cm = it->second;
  } else {
    cm = load_correlation_matrix(o.cm_path, o.at);
  }
  emit(analyze_to_json(cm).dump(2) + "\n", o, out);
  return exit_ok;
}

int cmd_sweep_loss(const Options& o, const CLI::App& cmd, std::ostream& out) {
  const auto format = parse_output_format(o.format);
  const bool pipeline = cmd.count("--v1") > 0 || cmd.count("--v2") > 0;
  const auto [v1, v2] = input_squeezing(o, cmd);
  if (!pipeline && o.v > 1) throw std::invalid_argument("--v must lie in (0, 1] for the closed-form sweep");

  std::vector<std::array<double, 3>> rows;
  for (int s = 0; s < o.steps; ++s) {
    const double eta = s == o.steps - 1 ? 1.0 : static_cast<double>(s) / (o.steps - 1);
    if (pipeline) {
      const auto cm = apply_loss(
          entangle_on_beamsplitter(SqueezedBeam<double>::pure(v1), SqueezedBeam<double>::pure(v2)).cm, eta, eta);
      rows.push_back({eta, degree_of_inseparability(cm), degree_of_epr(cm).degree});
    } else {
      rows.push_back({eta, inseparability_vs_loss(o.v, eta), epr_vs_loss(o.v, eta)});
    }
  }
  std::string text;
  if (format == OutputFormat::csv) {
    text = "eta,I,E\n";
    for (const auto& r : rows) text += format_number(r[0]) + "," + format_number(r[1]) + "," + format_number(r[2]) + "\n";
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back({{"eta", r[0]}, {"I", r[1]}, {"E", r[2]}});
    text = arr.dump(2) + "\n";
  }
  emit(text, o, out);
  return exit_ok;
}

int cmd_contours(const Options& o, std::ostream& out) {
  const auto format = parse_output_format(o.format);
  const auto grid = contour_grid<double>(parse_contour_metric(o.metric), {0.0, o.nmin_max}, {0.0, o.nexcess_max},
                                         o.grid, ContourParams<double>{o.n_encoding});
  emit(format == OutputFormat::csv ? contour_grid_to_csv(grid) : to_json(grid).dump(2) + "\n", o, out);
  return exit_ok;
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  const auto format = parse_output_format(o.format);
  std::vector<SpectrumRow> rows;
  if (o.synthetic) {
    if (!o.input.empty()) throw std::invalid_argument("give either an input file or --synthetic, not both");
    rows = synthesize_spectra(SynthesisParams{});
  } else {
    if (o.input.empty()) throw std::invalid_argument("ingest needs an input CSV file (or --synthetic)");
    rows = parse_spectra(read_text_file(o.input), o.db ? Units::db : Units::linear);
  }
  const auto result = derive_spectra(rows);
  for (const auto& f : result.failures) err << "skipped " << format_number(f.frequency) << " MHz: " << f.reason << "\n";
  emit(format == OutputFormat::csv ? derived_to_csv(result.rows) : derived_to_json(result.rows), o, out);
  return exit_ok;
}

int cmd_fixtures(const Options& o, std::ostream& out) {
  emit(to_json(fixture_anchors()).dump(2) + "\n", o, out);
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Two-mode Gaussian entanglement analysis: correlation matrices, inseparability, EPR paradox, "
               "photon number diagram, protocol efficacy."};
  app.name("gaussent");
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand and exit");

  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Write results to this file instead of stdout");
  };
  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  const auto add_squeezing = [&](CLI::App* cmd) {
    cmd->add_option("--v", o.v, "Amplitude variance of both pure squeezed inputs (shot noise = 1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--v1", o.v1, "Amplitude variance of input beam 1 (use with --v2)")->check(CLI::PositiveNumber);
    cmd->add_option("--v2", o.v2, "Amplitude variance of input beam 2 (use with --v1)")->check(CLI::PositiveNumber);
  };

  auto* model = app.add_subcommand("model", "Entangle two pure squeezed beams, apply loss, print state and analysis");
  add_squeezing(model);
  model->add_option("--eta", o.eta, "Detection efficiency of each beam")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  add_out(model);

  auto* analyze = app.add_subcommand("analyze", "Analyze a correlation matrix (JSON)");
  analyze->add_option("--cm", o.cm_path, "Correlation matrix or anchor-set JSON file (default: bundled anchors)");
  analyze->add_option("--at", o.at, "Anchor key inside an anchor-set file, e.g. 6.5MHz");
  add_out(analyze);

  auto* sweep = app.add_subcommand("sweep-loss", "Degrees of inseparability and EPR paradox versus efficiency");
  add_squeezing(sweep);
  sweep->add_option("--steps", o.steps, "Number of efficiency samples over [0, 1]")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  add_format(sweep);
  add_out(sweep);

  auto* contours = app.add_subcommand("contours", "Efficacy grid on the n_min / n_excess plane (n_bias = 0)");
  contours->add_option("--metric", o.metric, "Metric to tabulate")
      ->check(CLI::IsMember({"epr", "fidelity", "dense_ratio"}))
      ->capture_default_str();
  contours->add_option("--n-encoding", o.n_encoding, "Photon budget for dense_ratio")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  contours->add_option("--nmin-max", o.nmin_max, "Upper end of the n_min axis")->check(CLI::PositiveNumber)->capture_default_str();
  contours->add_option("--nexcess-max", o.nexcess_max, "Upper end of the n_excess axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  contours->add_option("--grid", o.grid, "Samples per axis")->check(CLI::Range(2, 10000))->capture_default_str();
  add_format(contours);
  add_out(contours);

  auto* ingest = app.add_subcommand("ingest", "Derive I, E and photon numbers from measured spectra CSV");
  ingest->add_option("input", o.input, "Spectra CSV: " + std::string(spectra_header));
  ingest->add_flag("--db", o.db, "Variance columns are in dB relative to shot noise");
  ingest->add_flag("--synthetic", o.synthetic, "Use the built-in qualitative spectrum model instead of a file");
  add_format(ingest);
  add_out(ingest);

  auto* fixtures = app.add_subcommand("fixtures", "Print the bundled anchor matrices (" +
                                                      std::string(fixtures_env_var) + " overrides the file)");
  add_out(fixtures);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_validation;
  }

  try {
    if (model->parsed()) return cmd_model(o, *model, out);
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (sweep->parsed()) return cmd_sweep_loss(o, *sweep, out);
    if (contours->parsed()) return cmd_contours(o, out);
    if (ingest->parsed()) return cmd_ingest(o, out, err);
    if (fixtures->parsed()) return cmd_fixtures(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  }
  err << app.help();
  return exit_validation;
}

}  // namespace gaussent::cli
