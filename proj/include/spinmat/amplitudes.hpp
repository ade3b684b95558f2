#pragma once

// Spin-2 eigenbasis along an arbitrary axis and the probability amplitudes
// phi(B_i;C_j) built from two such bases.
//
// Index convention: position k = 0..4 of every 5-vector and every table axis
// carries the spin projection m = 2 - k.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spinmat/linalg.hpp"

namespace spinmat {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace detail {

inline double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace detail

/// Spin projection carried by table position k.
constexpr int spin_projection(std::size_t k) { return 2 - static_cast<int>(k); }

/// Table position of spin projection m; throws std::domain_error for m outside [-2, 2].
inline std::size_t position_of(int m) {
  if (m < -2 || m > 2) throw std::domain_error("spin projection must be one of 2, 1, 0, -1, -2; got " + std::to_string(m));
  return static_cast<std::size_t>(2 - m);
}

/// A point on the unit sphere. Construction reduces the angles to
/// theta in [0, pi] and phi in [0, 2 pi) using
/// (theta, phi) ~ (2 pi - theta, phi + pi).
class Direction {
 public:
  Direction() = default;
  Direction(double theta, double phi) {
    theta = detail::wrap_two_pi(theta);
    if (theta > kPi) {
      theta = kTwoPi - theta;
      phi += kPi;
    }
    theta_ = theta;
    phi_ = detail::wrap_two_pi(phi);
  }

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  std::array<double, 3> unit_vector() const {
    return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
  }

  bool operator==(const Direction&) const = default;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

enum class Angle { theta, phi, theta_p, phi_p };

inline const char* angle_name(Angle a) {
  switch (a) {
    case Angle::theta: return "theta";
    case Angle::phi: return "phi";
    case Angle::theta_p: return "theta_p";
    case Angle::phi_p: return "phi_p";
  }
  return "?";
}

inline bool is_polar(Angle a) { return a == Angle::theta || a == Angle::theta_p; }

/// x = (theta, phi, theta', phi'): c axis (theta, phi) and b axis (theta', phi').
struct ParameterPoint {
  Direction c_axis;
  Direction b_axis;

  static ParameterPoint from_angles(const std::array<double, 4>& a) {
    return {Direction(a[0], a[1]), Direction(a[2], a[3])};
  }

  std::array<double, 4> angles() const {
    return {c_axis.theta(), c_axis.phi(), b_axis.theta(), b_axis.phi()};
  }

  double angle(Angle which) const { return angles()[static_cast<std::size_t>(which)]; }

  /// Copy with one angle replaced (and the point renormalized).
  ParameterPoint with(Angle which, double value) const {
    auto a = angles();
    a[static_cast<std::size_t>(which)] = value;
    return from_angles(a);
  }

  bool operator==(const ParameterPoint&) const = default;
};

/// Eigenvector of the spin-2 operator along a direction.
struct SpinVector {
  Vector5 components{};

  double norm() const { return spinmat::norm(components); }
  const Complex& operator[](std::size_t k) const { return components[k]; }
};

/// Closed-form normalized eigenvector of spin_operator(dir) with eigenvalue m.
///
/// The entries are the standard half-angle expressions; the overall sign is
/// (-1)^m relative to the commonly printed table, so that every chi(m, pole)
/// is the unit vector e_m. That choice makes the b-axis basis at the north
/// pole the identity, hence generate(theta' = phi' = 0) reproduces
/// spin_operator(theta, phi) itself.
inline SpinVector chi(int m, const Direction& dir) {
  const std::size_t pos = position_of(m);
  const double t = dir.theta();
  const double c2 = std::pow(std::cos(0.5 * t), 2);
  const double s2 = std::pow(std::sin(0.5 * t), 2);
  const double st = std::sin(t);
  const double ct = std::cos(t);
  const double r6 = std::sqrt(6.0);
  const Complex i(0.0, 1.0);
  const double p = dir.phi();
  auto e = [&](int k) { return std::exp(i * (static_cast<double>(k) * p)); };

  Vector5 v;
  switch (m) {
    case 2:
      v = {c2 * c2 * e(-2), st * c2 * e(-1), r6 / 4.0 * st * st, st * s2 * e(1), s2 * s2 * e(2)};
      break;
    case 1:
      v = {st * c2 * e(-2), (3.0 * s2 - c2) * c2 * e(-1), -r6 / 2.0 * st * ct, -(3.0 * c2 - s2) * s2 * e(1),
           -st * s2 * e(2)};
      break;
    case 0:
      v = {r6 / 4.0 * st * st * e(-2), -r6 / 2.0 * st * ct * e(-1), Complex(0.5 * (2.0 * ct * ct - st * st)),
           r6 / 2.0 * st * ct * e(1), r6 / 4.0 * st * st * e(2)};
      break;
    case -1:
      v = {st * s2 * e(-2), -(3.0 * c2 - s2) * s2 * e(-1), r6 / 2.0 * st * ct, (3.0 * s2 - c2) * c2 * e(1),
           -st * c2 * e(2)};
      break;
    default:  // m == -2
      v = {s2 * s2 * e(-2), -st * s2 * e(-1), r6 / 4.0 * st * st, -st * c2 * e(1), c2 * c2 * e(2)};
      break;
  }
  if (pos % 2 == 1) {
    for (auto& z : v) z = -z;
  }
  return {v};
}

/// Matrix whose column k is chi(m_k, dir).
inline Matrix5 spin_basis(const Direction& dir) {
  Matrix5 basis;
  for (std::size_t k = 0; k < kDim; ++k) basis.set_column(k, chi(spin_projection(k), dir).components);
  return basis;
}

/// The spin-2 operator c.S along dir. Hermitian by construction: the
/// (m=0, m=-1) coupling is (sqrt6/2) sin(theta) e^{-i phi}, mirroring its
/// transpose partner.
inline Matrix5 spin_operator(const Direction& dir) {
  const double st = std::sin(dir.theta());
  const double ct = std::cos(dir.theta());
  const Complex down = std::polar(1.0, -dir.phi());
  const std::array<double, 4> coupling{st, std::sqrt(6.0) / 2.0 * st, std::sqrt(6.0) / 2.0 * st, st};

  Matrix5 op;
  for (std::size_t k = 0; k < kDim; ++k) op(k, k) = static_cast<double>(spin_projection(k)) * ct;
  for (std::size_t k = 0; k + 1 < kDim; ++k) {
    op(k, k + 1) = coupling[k] * down;
    op(k + 1, k) = coupling[k] * std::conj(down);
  }
  return op;
}

/// phi(B_i;C_j) for all i, j at a parameter point; entry (i, j) = chi_{m_j}(c)^dagger chi_{m_i}(b).
struct AmplitudeTable {
  Matrix5 entries;
  ParameterPoint point;

  const Complex& operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

inline AmplitudeTable amplitude_table(const ParameterPoint& point) {
  const Matrix5 c_basis = spin_basis(point.c_axis);
  const Matrix5 b_basis = spin_basis(point.b_axis);
  AmplitudeTable table{{}, point};
  for (std::size_t i = 0; i < kDim; ++i) {
    const Vector5 b_i = b_basis.column(i);
    for (std::size_t j = 0; j < kDim; ++j) table.entries(i, j) = inner(c_basis.column(j), b_i);
  }
  return table;
}

namespace detail {

inline void check_index(std::size_t k, const char* what) {
  if (k >= kDim) throw std::domain_error(std::string(what) + " index out of range: " + std::to_string(k));
}

}  // namespace detail

/// xi(C_i, B_j) = conj(phi(B_j; C_i)). Indices are 0-based.
inline Complex xi(std::size_t i, std::size_t j, const ParameterPoint& point) {
  detail::check_index(i, "C");
  detail::check_index(j, "B");
  return std::conj(amplitude_table(point)(j, i));
}

/// Which variant of the expanded trigonometric amplitude to evaluate.
enum class ClosedForm {
  /// The expansion as commonly printed.
  printed,
  /// Consistent with the inner-product definition and the chi phase
  /// convention above.
  repaired,
};

/// Expanded closed forms of phi(B_1;C_1), phi(B_1;C_2) and phi(B_5;C_5)
/// (0-based pairs (0,0), (0,1), (4,4)); test oracle for amplitude_table.
///
/// Repairs: for (4,4) the e^{+2i(phi-phi')} term carries
/// sin^4(theta/2) sin^4(theta'/2), not a second cos^4 cos^4 product; for (0,1)
/// the chi(m=1) phase convention flips the overall sign.
inline Complex closed_form_amplitude(std::size_t i, std::size_t j, const ParameterPoint& point,
                                     ClosedForm form = ClosedForm::repaired) {
  const double t = point.c_axis.theta();
  const double tp = point.b_axis.theta();
  const double d = point.c_axis.phi() - point.b_axis.phi();
  const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
  const double cp = std::cos(0.5 * tp), sp = std::sin(0.5 * tp);
  const double st = std::sin(t), ct = std::cos(t), stp = std::sin(tp);
  auto e = [d](double k) { return std::polar(1.0, k * d); };
  const double c4 = std::pow(c, 4), s4 = std::pow(s, 4), cp4 = std::pow(cp, 4), sp4 = std::pow(sp, 4);

  if (i == 0 && j == 0) {
    return c4 * cp4 * e(2) + stp * st * cp * cp * c * c * e(1) + 3.0 / 8.0 * stp * stp * st * st +
           stp * st * sp * sp * s * s * e(-1) + s4 * sp4 * e(-2);
  }
  if (i == 0 && j == 1) {
    const Complex printed = st * cp4 * c * c * e(2) + (3.0 * s * s - c * c) * stp * cp * cp * c * c * e(1) -
                            3.0 / 4.0 * stp * stp * st * ct -
                            (3.0 * c * c - s * s) * stp * sp * sp * s * s * e(-1) - st * sp4 * s * s * e(-2);
    return form == ClosedForm::printed ? printed : -printed;
  }
  if (i == 4 && j == 4) {
    const double leading = form == ClosedForm::printed ? c4 * cp4 : s4 * sp4;
    return leading * e(2) + stp * st * sp * sp * s * s * e(1) + 3.0 / 8.0 * stp * stp * st * st +
           stp * st * cp * cp * c * c * e(-1) + c4 * cp4 * e(-2);
  }
  throw std::domain_error("no closed form available for amplitude (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
}

}  // namespace spinmat
