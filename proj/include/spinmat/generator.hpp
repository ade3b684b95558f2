#pragma once

// Matrices with prescribed eigenvalues and analytic eigenvectors:
//   M_ij = sum_n conj(phi(B_i;C_n)) phi(B_j;C_n) lambda_n
// with eigenvector xi_n = (conj(phi(B_1;C_n)), ..., conj(phi(B_5;C_n))).

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "spinmat/amplitudes.hpp"
#include "spinmat/linalg.hpp"

namespace spinmat {

/// Ordered eigenvalues; lambda_n is bound to C_n and hence to xi_n.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(const Vector5& values) : values_(values) {
    for (const auto& z : values_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("spectrum values must be finite");
  }

  const Vector5& values() const { return values_; }
  const Complex& operator[](std::size_t n) const { return values_[n]; }

  bool operator==(const Spectrum&) const = default;

 private:
  Vector5 values_{};
};

struct Provenance {
  ParameterPoint point;
  Spectrum spectrum;
};

struct GeneratedMatrix {
  Matrix5 entries;
  std::optional<Provenance> provenance;
};

struct EigenPair {
  Complex value{};
  Vector5 vector{};
};

using EigenPairs = std::array<EigenPair, kDim>;

struct FamilyFlags {
  bool diagonal = false;
  bool hermitian = false;
  bool anti_hermitian = false;
  bool symmetric = false;
  bool imaginary_symmetric = false;
  bool real_eigenvectors = false;

  /// No structure at all.
  bool general() const {
    return !(diagonal || hermitian || anti_hermitian || symmetric || imaginary_symmetric || real_eigenvectors);
  }

  bool operator==(const FamilyFlags&) const = default;
};

/// Analytic eigenvectors at a point; pair n holds xi_n and a zero value.
inline EigenPairs eigenvectors(const ParameterPoint& point) {
  const AmplitudeTable table = amplitude_table(point);
  EigenPairs pairs{};
  for (std::size_t n = 0; n < kDim; ++n)
    for (std::size_t k = 0; k < kDim; ++k) pairs[n].vector[k] = std::conj(table(k, n));
  return pairs;
}

/// Columns are the eigenvectors xi_n.
inline Matrix5 eigenvector_matrix(const ParameterPoint& point) {
  const AmplitudeTable table = amplitude_table(point);
  Matrix5 u;
  for (std::size_t k = 0; k < kDim; ++k)
    for (std::size_t n = 0; n < kDim; ++n) u(k, n) = std::conj(table(k, n));
  return u;
}

inline GeneratedMatrix generate(const ParameterPoint& point, const Spectrum& spectrum) {
  const AmplitudeTable phi = amplitude_table(point);
  Matrix5 m;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      Complex sum = 0.0;
      for (std::size_t n = 0; n < kDim; ++n) sum += std::conj(phi(i, n)) * phi(j, n) * spectrum[n];
      m(i, j) = sum;
    }
  return {m, Provenance{point, spectrum}};
}

/// Structural flags measured entrywise with the max-entry norm.
inline FamilyFlags classify(const Matrix5& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify tolerance must be positive");
  double off_diagonal = 0.0, herm = 0.0, anti = 0.0, sym = 0.0, real_part = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      if (i != j) off_diagonal = std::max(off_diagonal, std::abs(m(i, j)));
      herm = std::max(herm, std::abs(m(i, j) - std::conj(m(j, i))));
      anti = std::max(anti, std::abs(m(i, j) + std::conj(m(j, i))));
      sym = std::max(sym, std::abs(m(i, j) - m(j, i)));
      real_part = std::max(real_part, std::abs(m(i, j).real()));
    }
  FamilyFlags flags;
  flags.diagonal = off_diagonal < tol;
  flags.hermitian = herm < tol;
  flags.anti_hermitian = anti < tol;
  flags.symmetric = sym < tol;
  flags.imaginary_symmetric = flags.symmetric && real_part < tol;
  return flags;
}

/// As above, plus real_eigenvectors decided from the supplied eigenvectors.
inline FamilyFlags classify(const Matrix5& m, const EigenPairs& pairs, double tol) {
  FamilyFlags flags = classify(m, tol);
  double imag = 0.0;
  for (const auto& p : pairs)
    for (const auto& z : p.vector) imag = std::max(imag, std::abs(z.imag()));
  flags.real_eigenvectors = imag < tol;
  return flags;
}

inline FamilyFlags classify(const GeneratedMatrix& g, double tol) {
  if (g.provenance) return classify(g.entries, eigenvectors(g.provenance->point), tol);
  return classify(g.entries, tol);
}

namespace detail {

inline bool circular_equal(double a, double b, double slack) {
  const double d = std::abs(a - b);
  return std::min(d, kTwoPi - d) <= slack;
}

}  // namespace detail

/// Family predicted from the angles and the character of the eigenvalues alone:
///  - both axes coincide, or all angles vanish: diagonal;
///  - real eigenvalues: Hermitian;
///  - phi = phi': symmetric, with real eigenvectors;
///  - pure imaginary eigenvalues: anti-Hermitian, and imaginary symmetric
///    when also phi = phi';
///  - otherwise general.
inline FamilyFlags predict_family(const ParameterPoint& point, const Spectrum& spectrum, double slack = 1e-12) {
  const auto a = point.angles();
  const bool same_phi = detail::circular_equal(a[1], a[3], slack);
  const bool same_axes = std::abs(a[0] - a[2]) <= slack && same_phi;
  const bool all_zero = std::abs(a[0]) <= slack && std::abs(a[2]) <= slack && detail::circular_equal(a[1], 0.0, slack) &&
                        detail::circular_equal(a[3], 0.0, slack);

  bool real = true, imaginary = true;
  for (const auto& z : spectrum.values()) {
    real = real && std::abs(z.imag()) <= slack;
    imaginary = imaginary && std::abs(z.real()) <= slack;
  }

  FamilyFlags flags;
  flags.diagonal = same_axes || all_zero;
  flags.hermitian = real;
  flags.anti_hermitian = imaginary;
  flags.symmetric = same_phi || flags.diagonal;
  flags.real_eigenvectors = flags.symmetric;
  flags.imaginary_symmetric = flags.symmetric && imaginary;
  return flags;
}

}  // namespace spinmat
