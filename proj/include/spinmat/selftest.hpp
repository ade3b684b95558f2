#pragma once

// Seeded property checks over the whole library, reported one line per check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spinmat/amplitudes.hpp"
#include "spinmat/diagonalizer.hpp"
#include "spinmat/generator.hpp"
#include "spinmat/io.hpp"
#include "spinmat/oracle.hpp"
#include "spinmat/sampling.hpp"
#include "spinmat/tolerances.hpp"

namespace spinmat {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Worst observed value (or failure count).
  double metric = 0.0;
  double threshold = 0.0;
  /// True when the check requires metric > threshold instead of metric <= threshold.
  bool must_exceed = false;
  std::size_t trials = 0;
};

struct SelfTestConfig {
  std::uint64_t seed = 20050207;
  Tolerances tol;
  std::size_t samples = 200;
};

struct SelfTestReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

namespace detail {

inline CheckResult bounded(std::string name, double metric, double threshold, std::size_t trials) {
  return {std::move(name), metric <= threshold, metric, threshold, false, trials};
}

inline double unitarity_error(const Matrix5& t) {
  return max_abs_diff(t * adjoint(t), Matrix5::identity());
}

}  // namespace detail

inline SelfTestReport run_selftest(const SelfTestConfig& config) {
  const Tolerances& tol = config.tol;
  const std::size_t n = config.samples;
  Sampler sample(config.seed);
  SelfTestReport report;
  report.seed = config.seed;
  auto& out = report.checks;

  {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, detail::unitarity_error(amplitude_table(sample.point()).entries));
    out.push_back(detail::bounded("unitarity", worst, tol.unitarity, n));
  }
  {
    double eigen = 0.0, herm = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Direction d = sample.direction();
      const Matrix5 op = spin_operator(d);
      herm = std::max(herm, max_abs_diff(op, adjoint(op)));
      for (std::size_t p = 0; p < kDim; ++p) {
        const int m = spin_projection(p);
        const Vector5 v = chi(m, d).components;
        eigen = std::max(eigen, norm(op * v - static_cast<double>(m) * v));
      }
    }
    out.push_back(detail::bounded("spin_operator_eigen_equation", eigen, tol.eigen, n));
    out.push_back(detail::bounded("spin_operator_hermitian", herm, 0.0, n));
  }
  {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Direction d = sample.direction();
      worst = std::max(worst, max_abs_diff(amplitude_table({d, d}).entries, Matrix5::identity()));
    }
    out.push_back(detail::bounded("identity_degeneration", worst, tol.unitarity, n));
  }
  {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Direction b = sample.direction(), c = sample.direction(), d = sample.direction();
      const AmplitudeTable bc = amplitude_table({c, b}), bd = amplitude_table({d, b}), dc = amplitude_table({c, d});
      for (std::size_t i = 0; i < kDim; ++i)
        for (std::size_t j = 0; j < kDim; ++j) {
          Complex s = 0.0;
          for (std::size_t l = 0; l < kDim; ++l) s += bd(i, l) * dc(l, j);
          worst = std::max(worst, std::abs(bc(i, j) - s));
        }
    }
    out.push_back(detail::bounded("interdependence_law", worst, tol.unitarity, n));
  }
  {
    double a11 = 0.0, a12 = 0.0, a55 = 0.0, printed55 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const ParameterPoint p = sample.point();
      const AmplitudeTable t = amplitude_table(p);
      a11 = std::max(a11, std::abs(t(0, 0) - closed_form_amplitude(0, 0, p)));
      a12 = std::max(a12, std::abs(t(0, 1) - closed_form_amplitude(0, 1, p)));
      a55 = std::max(a55, std::abs(t(4, 4) - closed_form_amplitude(4, 4, p)));
      printed55 = std::max(printed55, std::abs(t(4, 4) - closed_form_amplitude(4, 4, p, ClosedForm::printed)));
    }
    out.push_back(detail::bounded("closed_form_11", a11, tol.unitarity, n));
    out.push_back(detail::bounded("closed_form_12", a12, tol.unitarity, n));
    out.push_back(detail::bounded("closed_form_55_repaired", a55, tol.unitarity, n));
    out.push_back({"closed_form_55_printed_discrepancy", printed55 > 1e-3, printed55, 1e-3, true, n});
  }
  {
    double worst = 0.0;
    const Spectrum spin(Vector5{2.0, 1.0, 0.0, -1.0, -2.0});
    for (std::size_t k = 0; k < n; ++k) {
      const Direction d = sample.direction();
      worst = std::max(worst, max_abs_diff(generate({d, Direction(0.0, 0.0)}, spin).entries, spin_operator(d)));
    }
    out.push_back(detail::bounded("spin_operator_reproduction", worst, tol.unitarity, n));
  }
  {
    double worst = 0.0, trace_err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const ParameterPoint p = sample.point();
      const Spectrum s = sample.complex_spectrum();
      const Matrix5 m = generate(p, s).entries;
      const EigenPairs xs = eigenvectors(p);
      Complex sum = 0.0;
      for (std::size_t i = 0; i < kDim; ++i) {
        worst = std::max(worst, norm(m * xs[i].vector - s[i] * xs[i].vector));
        sum += s[i];
      }
      trace_err = std::max(trace_err, std::abs(trace(m) - sum));
    }
    out.push_back(detail::bounded("generated_eigen_equation", worst, tol.eigen, n));
    out.push_back(detail::bounded("trace_equals_spectrum_sum", trace_err, tol.eigen, n));
  }
  {
    // Each family rule: fraction of samples where classify disagrees with the rule.
    struct Rule {
      const char* name;
      std::function<ParameterPoint()> point;
      std::function<Spectrum()> spectrum;
      std::function<bool(const FamilyFlags&)> holds;
    };
    const std::vector<Rule> rules{
        {"family_diagonal", [&] { const Direction d = sample.direction(); return ParameterPoint{d, d}; },
         [&] { return sample.complex_spectrum(); }, [](const FamilyFlags& f) { return f.diagonal; }},
        {"family_hermitian", [&] { return sample.point(); }, [&] { return sample.real_spectrum(); },
         [](const FamilyFlags& f) { return f.hermitian; }},
        {"family_symmetric", [&] { return sample.point_with_equal_phi(); }, [&] { return sample.complex_spectrum(); },
         [](const FamilyFlags& f) { return f.symmetric; }},
        {"family_real_eigenvectors", [&] { return sample.point_with_equal_phi(); },
         [&] { return sample.complex_spectrum(); }, [](const FamilyFlags& f) { return f.real_eigenvectors; }},
        {"family_anti_hermitian", [&] { return sample.point(); }, [&] { return sample.imaginary_spectrum(); },
         [](const FamilyFlags& f) { return f.anti_hermitian; }},
        {"family_imaginary_symmetric", [&] { return sample.point_with_equal_phi(); },
         [&] { return sample.imaginary_spectrum(); }, [](const FamilyFlags& f) { return f.imaginary_symmetric; }},
        {"family_general", [&] { return sample.point(); }, [&] { return sample.complex_spectrum(); },
         [](const FamilyFlags& f) { return f.general(); }},
    };
    double mismatch_total = 0.0;
    for (const auto& rule : rules) {
      double failures = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const ParameterPoint p = rule.point();
        const Spectrum s = rule.spectrum();
        const FamilyFlags measured = classify(generate(p, s), tol.classify);
        if (!rule.holds(measured)) failures += 1.0;
        if (!(measured == predict_family(p, s))) mismatch_total += 1.0;
      }
      out.push_back(detail::bounded(rule.name, failures, 0.0, n));
    }
    out.push_back(detail::bounded("predict_matches_classify", mismatch_total, 0.0, n * rules.size()));
  }
  {
    double commutator = 0.0, linearity = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const ParameterPoint p = sample.point();
      const Spectrum s1 = sample.complex_spectrum(), s2 = sample.complex_spectrum();
      const Matrix5 m1 = generate(p, s1).entries, m2 = generate(p, s2).entries;
      commutator = std::max(commutator, max_abs(m1 * m2 - m2 * m1));
      const Complex a(0.7, -1.3), b(-2.1, 0.4);
      Vector5 mix;
      for (std::size_t i = 0; i < kDim; ++i) mix[i] = a * s1[i] + b * s2[i];
      linearity = std::max(linearity, max_abs_diff(generate(p, Spectrum(mix)).entries, a * m1 + b * m2));
    }
    out.push_back(detail::bounded("shared_eigenbasis_commute", commutator, 1e-9, n));
    out.push_back(detail::bounded("linearity_in_spectrum", linearity, 1e-12, n));
  }
  {
    double root = 0.0, oracle_values = 0.0, oracle_vectors = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const ParameterPoint p = sample.point();
      const Spectrum s = sample.complex_spectrum();
      const Matrix5 m = generate(p, s).entries;
      root = std::max(root, std::abs(residual(m, p).value) / std::max(1.0, max_abs(m)));
      std::array<Vector5, kDim> vectors;
      const EigenPairs xs = eigenvectors(p);
      for (std::size_t i = 0; i < kDim; ++i) vectors[i] = xs[i].vector;
      try {
        const SpectrumMatch match = match_spectra(eig5(m, tol.oracle), s.values(), vectors, tol.oracle, tol.match);
        oracle_values = std::max(oracle_values, match.max_value_error);
        oracle_vectors = std::max(oracle_vectors, match.max_vector_error);
      } catch (const SpectrumMismatch& e) {
        oracle_values = std::max(oracle_values, e.best.max_value_error);
        oracle_vectors = std::max(oracle_vectors, e.best.max_vector_error);
      } catch (const OracleFailure&) {
        oracle_values = std::max(oracle_values, 1.0);
      }
    }
    out.push_back(detail::bounded("residual_root_property", root, tol.root, n));
    out.push_back(detail::bounded("oracle_spectrum", oracle_values, tol.oracle, n));
    out.push_back(detail::bounded("oracle_eigenvectors", oracle_vectors, tol.match, n));
  }
  {
    const std::size_t instances = std::max<std::size_t>(1, n / 20);
    double failures = 0.0;
    BisectionOptions options;
    options.tol = tol.bisect;
    options.verify_tol = tol.verify;
    options.skip = tol.skip;
    for (std::size_t k = 0; k < instances; ++k) {
      const ParameterPoint p = sample.point();
      const Spectrum s = sample.real_spectrum();
      const Matrix5 m = generate(p, s).entries;
      for (const Angle free : {Angle::theta, Angle::phi, Angle::theta_p, Angle::phi_p}) {
        try {
          const ParameterPoint found = bisect_recover(m, p, free, full_bracket(free), options);
          const RecoveryResult r = recover_spectrum(m, found, tol.skip);
          match_spectra(eig5(m, tol.oracle), r.spectrum(), std::nullopt, tol.verify);
        } catch (const std::exception&) {
          failures += 1.0;
        }
      }
    }
    out.push_back(detail::bounded("bisection_round_trip", failures, 0.0, 4 * instances));
  }
  return report;
}

inline std::string to_json(const SelfTestReport& report) {
  std::string out = "{\n  \"seed\": " + std::to_string(report.seed) + ",\n  \"passed\": " +
                    (report.passed() ? "true" : "false") + ",\n  \"checks\": [";
  for (std::size_t k = 0; k < report.checks.size(); ++k) {
    const CheckResult& c = report.checks[k];
    out += std::string(k ? "," : "") + "\n    {\"name\": \"" + c.name + "\", \"passed\": " +
           (c.passed ? "true" : "false") + ", \"metric\": " + io::format_double(c.metric) +
           ", \"threshold\": " + io::format_double(c.threshold) + ", \"comparison\": \"" +
           (c.must_exceed ? ">" : "<=") + "\", \"trials\": " + std::to_string(c.trials) + "}";
  }
  return out + "\n  ]\n}\n";
}

inline std::string to_csv(const SelfTestReport& report) {
  std::string out = "name,passed,metric,comparison,threshold,trials\n";
  for (const CheckResult& c : report.checks)
    out += c.name + "," + (c.passed ? "true" : "false") + "," + io::format_double(c.metric) + "," +
           (c.must_exceed ? ">" : "<=") + "," + io::format_double(c.threshold) + "," + std::to_string(c.trials) + "\n";
  return out;
}

}  // namespace spinmat
