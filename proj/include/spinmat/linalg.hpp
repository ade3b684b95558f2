#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace spinmat {

using Complex = std::complex<double>;

/// Order of every matrix in this library (spin 2 => 2s+1 = 5).
inline constexpr std::size_t kDim = 5;

using Vector5 = std::array<Complex, kDim>;

/// Dense row-major 5x5 complex matrix.
struct Matrix5 {
  std::array<Complex, kDim * kDim> data{};

  constexpr Complex& operator()(std::size_t row, std::size_t col) { return data[row * kDim + col]; }
  constexpr const Complex& operator()(std::size_t row, std::size_t col) const {
    return data[row * kDim + col];
  }

  static Matrix5 identity() {
    Matrix5 m;
    for (std::size_t k = 0; k < kDim; ++k) m(k, k) = 1.0;
    return m;
  }

  static Matrix5 diagonal(const Vector5& values) {
    Matrix5 m;
    for (std::size_t k = 0; k < kDim; ++k) m(k, k) = values[k];
    return m;
  }

  Vector5 column(std::size_t col) const {
    Vector5 v;
    for (std::size_t r = 0; r < kDim; ++r) v[r] = (*this)(r, col);
    return v;
  }

  void set_column(std::size_t col, const Vector5& v) {
    for (std::size_t r = 0; r < kDim; ++r) (*this)(r, col) = v[r];
  }

  bool operator==(const Matrix5&) const = default;
};

inline Matrix5 operator+(const Matrix5& a, const Matrix5& b) {
  Matrix5 out;
  for (std::size_t k = 0; k < a.data.size(); ++k) out.data[k] = a.data[k] + b.data[k];
  return out;
}

inline Matrix5 operator-(const Matrix5& a, const Matrix5& b) {
  Matrix5 out;
  for (std::size_t k = 0; k < a.data.size(); ++k) out.data[k] = a.data[k] - b.data[k];
  return out;
}

inline Matrix5 operator*(Complex s, const Matrix5& a) {
  Matrix5 out;
  for (std::size_t k = 0; k < a.data.size(); ++k) out.data[k] = s * a.data[k];
  return out;
}

inline Matrix5 operator*(const Matrix5& a, const Matrix5& b) {
  Matrix5 out;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t l = 0; l < kDim; ++l) {
      const Complex a_il = a(i, l);
      for (std::size_t j = 0; j < kDim; ++j) out(i, j) += a_il * b(l, j);
    }
  return out;
}

inline Vector5 operator*(const Matrix5& a, const Vector5& v) {
  Vector5 out{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t l = 0; l < kDim; ++l) out[i] += a(i, l) * v[l];
  return out;
}

inline Vector5 operator*(Complex s, const Vector5& v) {
  Vector5 out;
  for (std::size_t k = 0; k < kDim; ++k) out[k] = s * v[k];
  return out;
}

inline Vector5 operator-(const Vector5& a, const Vector5& b) {
  Vector5 out;
  for (std::size_t k = 0; k < kDim; ++k) out[k] = a[k] - b[k];
  return out;
}

inline Matrix5 adjoint(const Matrix5& a) {
  Matrix5 out;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

inline Matrix5 transpose(const Matrix5& a) {
  Matrix5 out;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) out(j, i) = a(i, j);
  return out;
}

inline Complex trace(const Matrix5& a) {
  Complex t = 0.0;
  for (std::size_t k = 0; k < kDim; ++k) t += a(k, k);
  return t;
}

/// Conjugate-linear in the first argument: sum_k conj(a_k) b_k.
inline Complex inner(const Vector5& a, const Vector5& b) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < kDim; ++k) s += std::conj(a[k]) * b[k];
  return s;
}

inline double norm(const Vector5& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// Largest entry modulus, ||A||_max.
inline double max_abs(const Matrix5& a) {
  double m = 0.0;
  for (const auto& z : a.data) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_diff(const Matrix5& a, const Matrix5& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.data.size(); ++k) m = std::max(m, std::abs(a.data[k] - b.data[k]));
  return m;
}

inline bool all_finite(const Matrix5& a) {
  return std::all_of(a.data.begin(), a.data.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace spinmat
