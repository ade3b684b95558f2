// Command-line front end: generate, diagonalize, classify, selftest.
//
// Exit codes: 0 success, 2 usage, 3 recovery failed, 4 selftest failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "spinmat/amplitudes.hpp"
#include "spinmat/diagonalizer.hpp"
#include "spinmat/generator.hpp"
#include "spinmat/io.hpp"
#include "spinmat/oracle.hpp"
#include "spinmat/sampling.hpp"
#include "spinmat/selftest.hpp"
#include "spinmat/tolerances.hpp"

namespace {

using namespace spinmat;

constexpr int kExitUsage = 2;
constexpr int kExitRecoveryFailed = 3;
constexpr int kExitSelftestFailed = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = 20050207;
  Tolerances tol;
  std::string output_path;
  std::string format = "json";
  bool degrees = false;
};

void add_common(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--seed", config.seed, "Random seed");
  cmd->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("-o,--output", config.output_path, "Write output to a file instead of stdout");
  cmd->add_flag("--degrees", config.degrees, "Angles on the command line are in degrees");
  for (const auto& [name, member] : Tolerances::fields())
    cmd->add_option("--tol." + std::string(name), config.tol.*member, "Tolerance override: " + std::string(name));
}

void emit(const RunConfig& config, const std::string& text) {
  if (config.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + config.output_path);
  out << text;
}

double to_radians(double value, bool degrees) { return degrees ? value * kPi / 180.0 : value; }

double parse_real_arg(const std::string& text, const std::string& what, std::size_t position) {
  try {
    return io::parse_real(text, text);
  } catch (const std::invalid_argument&) {
    throw UsageError(what + " " + std::to_string(position + 1) + ": malformed number \"" + text + "\"");
  }
}

std::array<double, 4> parse_angles(const std::vector<std::string>& text, bool degrees) {
  if (text.size() != 4) throw UsageError("--angles takes exactly 4 values");
  std::array<double, 4> a{};
  for (std::size_t k = 0; k < 4; ++k) a[k] = to_radians(parse_real_arg(text[k], "angle", k), degrees);
  return a;
}

/// Accepts "re", "re+imi", "re-imi" or "re,im".
Spectrum parse_spectrum(const std::vector<std::string>& text) {
  if (text.size() != kDim) throw UsageError("--spectrum takes exactly 5 values");
  Vector5 values;
  for (std::size_t k = 0; k < kDim; ++k) {
    const std::string& item = text[k];
    try {
      const auto comma = item.find(',');
      if (comma != std::string::npos) {
        const double re = io::parse_complex(item.substr(0, comma)).real();
        const Complex im = io::parse_complex(item.substr(comma + 1));
        if (im.imag() != 0.0) throw std::invalid_argument("nested imaginary part");
        values[k] = {re, im.real()};
      } else {
        values[k] = io::parse_complex(item);
      }
    } catch (const std::invalid_argument&) {
      throw UsageError("spectrum value " + std::to_string(k + 1) + ": malformed number \"" + item + "\"");
    }
  }
  return Spectrum(values);
}

GeneratedMatrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return io::read_matrix(buffer.str());
  } catch (const io::FormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string csv_complex(const std::string& section, const std::string& row, const std::string& col,
                        const Complex& z) {
  return section + "," + row + "," + col + "," + io::format_double(z.real()) + "," + io::format_double(z.imag()) +
         "\n";
}

std::string csv_flags(const std::string& section, const FamilyFlags& f) {
  std::string out;
  auto line = [&](const char* name, bool v) { out += section + "," + name + ",," + (v ? "1" : "0") + ",0\n"; };
  line("diagonal", f.diagonal);
  line("hermitian", f.hermitian);
  line("anti_hermitian", f.anti_hermitian);
  line("symmetric", f.symmetric);
  line("imaginary_symmetric", f.imaginary_symmetric);
  line("real_eigenvectors", f.real_eigenvectors);
  line("general", f.general());
  return out;
}

std::string vectors_json(const EigenPairs& pairs) {
  std::string out = "[";
  for (std::size_t i = 0; i < kDim; ++i) out += std::string(i ? ",\n    " : "\n    ") + io::format_vector(pairs[i].vector);
  return out + "\n  ]";
}

int run_generate(const RunConfig& config, const std::vector<std::string>& angle_text,
                 const std::vector<std::string>& spectrum_text) {
  Sampler sample(config.seed);
  const ParameterPoint point =
      angle_text.empty() ? sample.point() : ParameterPoint::from_angles(parse_angles(angle_text, config.degrees));
  const Spectrum spectrum = spectrum_text.empty() ? sample.complex_spectrum() : parse_spectrum(spectrum_text);

  const GeneratedMatrix g = generate(point, spectrum);
  const EigenPairs vectors = eigenvectors(point);
  const FamilyFlags predicted = predict_family(point, spectrum);
  const FamilyFlags measured = classify(g, config.tol.classify);

  if (config.format == "csv") {
    std::string out = "section,row,col,re,im\n";
    const auto a = point.angles();
    for (std::size_t k = 0; k < 4; ++k) out += csv_complex("angle", angle_name(static_cast<Angle>(k)), "", a[k]);
    for (std::size_t i = 0; i < kDim; ++i) out += csv_complex("spectrum", std::to_string(i), "", spectrum[i]);
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j)
        out += csv_complex("matrix", std::to_string(i), std::to_string(j), g.entries(i, j));
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t k = 0; k < kDim; ++k)
        out += csv_complex("eigenvector", std::to_string(i), std::to_string(k), vectors[i].vector[k]);
    out += csv_flags("predicted_family", predicted) + csv_flags("measured_family", measured);
    emit(config, out);
    return 0;
  }
  emit(config, "{\n" + io::matrix_members(g) + ",\n  \"eigenvectors\": " + vectors_json(vectors) +
                   ",\n  \"predicted_family\": " + io::format_flags(predicted) +
                   ",\n  \"measured_family\": " + io::format_flags(measured) + "\n}\n");
  return 0;
}

struct DiagonalizeArgs {
  std::string file;
  std::string mode = "bisect";
  std::string free = "theta";
  std::vector<std::string> angles;
  std::vector<std::string> bracket;
  int grid = 12;
};

Angle parse_free(const std::string& name) {
  for (const Angle a : {Angle::theta, Angle::phi, Angle::theta_p, Angle::phi_p})
    if (name == angle_name(a)) return a;
  throw UsageError("--free must be one of theta, phi, theta_p, phi_p");
}

std::string failure_json(const std::string& mode, const char* kind, const RecoveryError& e) {
  std::string out = "{\n  \"mode\": \"" + mode + "\",\n  \"verified\": false,\n  \"error\": \"" + kind +
                    "\",\n  \"message\": \"" + e.what() + "\",\n  \"best_metric\": " +
                    io::format_double(e.best_metric);
  if (e.best_point) {
    const auto a = e.best_point->angles();
    out += ",\n  \"best_point\": [" + io::format_double(a[0]) + ", " + io::format_double(a[1]) + ", " +
           io::format_double(a[2]) + ", " + io::format_double(a[3]) + "]";
  }
  return out + "\n}\n";
}

int run_diagonalize(const RunConfig& config, const DiagonalizeArgs& args) {
  const GeneratedMatrix g = load_matrix(args.file);
  const Matrix5& m = g.entries;
  const Tolerances& tol = config.tol;

  ParameterPoint point;
  try {
    if (args.mode == "bisect") {
      ParameterPoint known;
      if (!args.angles.empty())
        known = ParameterPoint::from_angles(parse_angles(args.angles, config.degrees));
      else if (g.provenance)
        known = g.provenance->point;
      else
        throw UsageError("bisect mode needs the three fixed angles: pass --angles or a file with provenance");
      const Angle free = parse_free(args.free);
      Bracket bracket = full_bracket(free);
      if (!args.bracket.empty()) {
        if (args.bracket.size() != 2) throw UsageError("--bracket takes lo and hi");
        bracket = {to_radians(parse_real_arg(args.bracket[0], "bracket", 0), config.degrees),
                   to_radians(parse_real_arg(args.bracket[1], "bracket", 1), config.degrees)};
      }
      BisectionOptions options;
      options.tol = tol.bisect;
      options.verify_tol = tol.verify;
      options.skip = tol.skip;
      try {
        point = bisect_recover(m, known, free, bracket, options);
      } catch (const std::domain_error& e) {
        throw UsageError(e.what());
      }
    } else {
      MultistartOptions options;
      options.grid_density = args.grid;
      options.refine_tol = tol.refine;
      options.verify_tol = tol.verify;
      options.skip = tol.skip;
      try {
        point = multistart_recover(m, options);
      } catch (const std::domain_error& e) {
        throw UsageError(e.what());
      }
    }
  } catch (const NoRootInBracket& e) {
    emit(config, failure_json(args.mode, "no root in bracket", e));
    return kExitRecoveryFailed;
  } catch (const SpuriousRoot& e) {
    emit(config, failure_json(args.mode, "spurious root", e));
    return kExitRecoveryFailed;
  } catch (const RecoveryFailed& e) {
    emit(config, failure_json(args.mode, "recovery failed", e));
    return kExitRecoveryFailed;
  }

  const ConsistencyReport verdict = verify_recovery(m, point, tol.verify, tol.skip);
  const RecoveryResult& r = *verdict.recovery;
  const Complex s = residual(m, point).value;

  std::string oracle;
  try {
    const SpectrumMatch match = match_spectra(eig5(m, tol.oracle), r.spectrum(), std::nullopt, tol.verify);
    oracle = "{\"agrees\": true, \"max_value_error\": " + io::format_double(match.max_value_error) + "}";
  } catch (const SpectrumMismatch& e) {
    oracle = "{\"agrees\": false, \"max_value_error\": " + io::format_double(e.best.max_value_error) + "}";
  } catch (const OracleFailure& e) {
    oracle = std::string("{\"agrees\": false, \"error\": \"") + e.what() + "\"}";
  }

  const auto a = point.angles();
  if (config.format == "csv") {
    std::string out = "section,row,col,re,im\n";
    for (std::size_t k = 0; k < 4; ++k) out += csv_complex("angle", angle_name(static_cast<Angle>(k)), "", a[k]);
    out += csv_complex("residual", "", "", s);
    for (std::size_t i = 0; i < kDim; ++i) out += csv_complex("spectrum", std::to_string(i), "", r.pairs[i].value);
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t k = 0; k < kDim; ++k)
        out += csv_complex("eigenvector", std::to_string(i), std::to_string(k), r.pairs[i].vector[k]);
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t k = 0; k < kDim; ++k)
        if (r.consistency[i][k]) out += csv_complex("row_estimate", std::to_string(i), std::to_string(k), *r.consistency[i][k]);
    out += csv_complex("max_spread", "", "", r.max_spread);
    out += csv_complex("verified", "", "", verdict.passed ? 1.0 : 0.0);
    emit(config, out);
    return verdict.passed ? 0 : kExitRecoveryFailed;
  }

  std::string consistency = "[";
  for (std::size_t i = 0; i < kDim; ++i) {
    consistency += std::string(i ? ",\n    [" : "\n    [");
    for (std::size_t k = 0; k < kDim; ++k)
      consistency += std::string(k ? ", " : "") + (r.consistency[i][k] ? io::format_complex(*r.consistency[i][k]) : "null");
    consistency += "]";
  }
  consistency += "\n  ]";

  emit(config, "{\n  \"mode\": \"" + args.mode + "\",\n  \"verified\": " + (verdict.passed ? "true" : "false") +
                   ",\n  \"point\": [" + io::format_double(a[0]) + ", " + io::format_double(a[1]) + ", " +
                   io::format_double(a[2]) + ", " + io::format_double(a[3]) + "],\n  \"residual\": " +
                   io::format_complex(s) + ",\n  \"spectrum\": " + io::format_vector(r.spectrum()) +
                   ",\n  \"eigenvectors\": " + vectors_json(r.pairs) + ",\n  \"consistency\": " + consistency +
                   ",\n  \"max_spread\": " + io::format_double(r.max_spread) + ",\n  \"max_eigen_residual\": " +
                   io::format_double(verdict.max_eigen_residual) + ",\n  \"oracle\": " + oracle + "\n}\n");
  return verdict.passed ? 0 : kExitRecoveryFailed;
}

int run_classify(const RunConfig& config, const std::string& file) {
  const GeneratedMatrix g = load_matrix(file);
  const FamilyFlags measured = classify(g, config.tol.classify);
  if (config.format == "csv") {
    std::string out = "section,row,col,re,im\n" + csv_flags("measured_family", measured);
    if (g.provenance) out += csv_flags("predicted_family", predict_family(g.provenance->point, g.provenance->spectrum));
    emit(config, out);
    return 0;
  }
  std::string out = "{\n  \"measured_family\": " + io::format_flags(measured);
  if (g.provenance)
    out += ",\n  \"predicted_family\": " + io::format_flags(predict_family(g.provenance->point, g.provenance->spectrum));
  emit(config, out + "\n}\n");
  return 0;
}

int run_selftest(const RunConfig& config, std::size_t samples) {
  SelfTestConfig st;
  st.seed = config.seed;
  st.tol = config.tol;
  st.samples = samples;
  const SelfTestReport report = spinmat::run_selftest(st);
  emit(config, config.format == "csv" ? to_csv(report) : to_json(report));
  return report.passed() ? 0 : kExitSelftestFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate 5x5 matrices with prescribed eigenvalues from spin-2 amplitudes, and diagonalize them"};
  app.require_subcommand(1);

  RunConfig config;

  std::vector<std::string> angle_text, spectrum_text;
  auto* gen = app.add_subcommand("generate", "Build a matrix from four angles and five eigenvalues");
  add_common(gen, config);
  gen->add_option("--angles", angle_text, "theta phi theta_p phi_p (sampled from --seed if omitted)")->expected(4);
  gen->add_option("--spectrum", spectrum_text, "Five eigenvalues: re, re+imi or re,im (sampled if omitted)")
      ->expected(5)
      ->allow_extra_args(false);

  DiagonalizeArgs diag;
  auto* dia = app.add_subcommand("diagonalize", "Recover the generating angles and eigen-data of a matrix file");
  add_common(dia, config);
  dia->add_option("file", diag.file, "Matrix file")->required();
  dia->add_option("--mode", diag.mode, "Recovery strategy")->check(CLI::IsMember({"bisect", "multistart"}));
  dia->add_option("--free", diag.free, "Free angle in bisect mode")
      ->check(CLI::IsMember({"theta", "phi", "theta_p", "phi_p"}));
  dia->add_option("--angles", diag.angles, "Fixed angles for bisect mode (defaults to the file's provenance)")
      ->expected(4);
  dia->add_option("--bracket", diag.bracket, "Search interval lo hi for the free angle")->expected(2);
  dia->add_option("--grid", diag.grid, "Grid points per axis in multistart mode");

  std::string classify_file;
  auto* cls = app.add_subcommand("classify", "Report the structural family of a matrix file");
  add_common(cls, config);
  cls->add_option("file", classify_file, "Matrix file")->required();

  std::size_t samples = 200;
  auto* st = app.add_subcommand("selftest", "Run the seeded property checks");
  add_common(st, config);
  st->add_option("--samples", samples, "Random instances per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) return run_generate(config, angle_text, spectrum_text);
    if (dia->parsed()) return run_diagonalize(config, diag);
    if (cls->parsed()) return run_classify(config, classify_file);
    return run_selftest(config, samples);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
