#pragma once

// Matrix file format (JSON):
//   {"n": 5,
//    "entries": [[re, im], ... 25 pairs, row-major],
//    "provenance": {"angles": [theta, phi, theta_p, phi_p],
//                   "spectrum": [[re, im], ... 5 pairs]}}      (optional)
// Numbers are written with 17 significant digits, so reading a written file
// reproduces every double exactly. Readers ignore unknown members.

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "spinmat/generator.hpp"
#include "spinmat/linalg.hpp"

namespace spinmat::io {

class FormatError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_complex(const Complex& z) {
  return "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
}

inline std::string format_vector(const Vector5& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < kDim; ++k) out += (k ? ", " : "") + format_complex(v[k]);
  return out + "]";
}

inline std::string format_flags(const FamilyFlags& f) {
  auto b = [](bool v) { return v ? "true" : "false"; };
  return std::string("{\"diagonal\": ") + b(f.diagonal) + ", \"hermitian\": " + b(f.hermitian) +
         ", \"anti_hermitian\": " + b(f.anti_hermitian) + ", \"symmetric\": " + b(f.symmetric) +
         ", \"imaginary_symmetric\": " + b(f.imaginary_symmetric) + ", \"real_eigenvectors\": " +
         b(f.real_eigenvectors) + ", \"general\": " + b(f.general()) + "}";
}

/// Body members of a matrix document (no enclosing braces), for embedding in
/// larger documents.
inline std::string matrix_members(const GeneratedMatrix& g, std::string_view indent = "  ") {
  std::string out;
  out += std::string(indent) + "\"n\": 5,\n";
  out += std::string(indent) + "\"entries\": [";
  for (std::size_t i = 0; i < kDim; ++i) {
    out += "\n" + std::string(indent) + "  ";
    for (std::size_t j = 0; j < kDim; ++j) {
      out += format_complex(g.entries(i, j));
      if (i + 1 < kDim || j + 1 < kDim) out += j + 1 < kDim ? ", " : ",";
    }
  }
  out += "\n" + std::string(indent) + "]";
  if (g.provenance) {
    const auto a = g.provenance->point.angles();
    out += ",\n" + std::string(indent) + "\"provenance\": {\"angles\": [" + format_double(a[0]) + ", " +
           format_double(a[1]) + ", " + format_double(a[2]) + ", " + format_double(a[3]) +
           "], \"spectrum\": " + format_vector(g.provenance->spectrum.values()) + "}";
  }
  return out;
}

inline std::string write_matrix(const GeneratedMatrix& g) { return "{\n" + matrix_members(g) + "\n}\n"; }

namespace detail {

inline Complex complex_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError(where + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline GeneratedMatrix read_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("matrix document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<int>() != 5)
    throw FormatError("\"n\" must be 5");
  const auto& entries = doc.contains("entries") ? doc["entries"] : nlohmann::json();
  if (!entries.is_array() || entries.size() != kDim * kDim) throw FormatError("\"entries\" must hold 25 [re, im] pairs");

  GeneratedMatrix g;
  for (std::size_t k = 0; k < kDim * kDim; ++k)
    g.entries.data[k] = detail::complex_from_json(entries[k], "entries[" + std::to_string(k) + "]");
  if (!all_finite(g.entries)) throw FormatError("matrix entries must be finite");

  if (doc.contains("provenance")) {
    const auto& prov = doc["provenance"];
    if (!prov.is_object() || !prov.contains("angles") || !prov["angles"].is_array() || prov["angles"].size() != 4 ||
        !prov.contains("spectrum") || !prov["spectrum"].is_array() || prov["spectrum"].size() != kDim)
      throw FormatError("\"provenance\" needs 4 angles and 5 spectrum values");
    std::array<double, 4> angles{};
    for (std::size_t k = 0; k < 4; ++k) {
      if (!prov["angles"][k].is_number()) throw FormatError("provenance angle must be a number");
      angles[k] = prov["angles"][k].get<double>();
    }
    Vector5 values;
    for (std::size_t k = 0; k < kDim; ++k)
      values[k] = detail::complex_from_json(prov["spectrum"][k], "provenance.spectrum[" + std::to_string(k) + "]");
    g.provenance = Provenance{ParameterPoint::from_angles(angles), Spectrum(values)};
  }
  return g;
}

/// Parses a real number; `whole` names the enclosing token in the error message.
inline double parse_real(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("malformed number \"" + std::string(whole) + "\"");
  return value;
}

/// Parses "re", "re+imi", "re-imi", "imi", "i" or "-i".
inline Complex parse_complex(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty complex number");
  if (text.back() != 'i') return {parse_real(text, text), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_text = split == std::string_view::npos ? std::string_view() : body.substr(0, split);
  const std::string_view im_text = split == std::string_view::npos ? body : body.substr(split);
  const double re = re_text.empty() ? 0.0 : parse_real(re_text, text);
  double im;
  if (im_text.empty() || im_text == "+")
    im = 1.0;
  else if (im_text == "-")
    im = -1.0;
  else
    im = parse_real(im_text, text);
  return {re, im};
}

}  // namespace spinmat::io
