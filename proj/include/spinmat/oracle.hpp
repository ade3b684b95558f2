#pragma once

// Independent eigendecomposition used to cross-check generated matrices and
// recovered spectra. Shares nothing with the amplitude/generator code path.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "spinmat/generator.hpp"
#include "spinmat/linalg.hpp"

namespace spinmat {

class OracleFailure : public std::runtime_error {
 public:
  OracleFailure(const std::string& what, double residual) : std::runtime_error(what), best_residual(residual) {}
  double best_residual;
};

/// Eigenpairs of a general complex 5x5 matrix, vectors normalized to unit length.
/// Throws OracleFailure if some pair misses ||Mv - lambda v|| < tol * ||M||_max.
inline EigenPairs eig5(const Matrix5& m, double tol = 1e-8) {
  if (!all_finite(m)) throw std::invalid_argument("eig5 requires a finite matrix");
  using Dense = Eigen::Matrix<Complex, 5, 5>;
  Dense a;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);

  Eigen::ComplexEigenSolver<Dense> solver(a, true);
  if (solver.info() != Eigen::Success) throw OracleFailure("complex Schur iteration did not converge", 0.0);

  const double bound = tol * max_abs(m);
  double worst = 0.0;
  EigenPairs pairs{};
  for (Eigen::Index k = 0; k < 5; ++k) {
    const Eigen::Matrix<Complex, 5, 1> v = solver.eigenvectors().col(k).normalized();
    const Complex lambda = solver.eigenvalues()(k);
    worst = std::max(worst, (a * v - lambda * v).norm());
    auto& pair = pairs[static_cast<std::size_t>(k)];
    pair.value = lambda;
    for (std::size_t r = 0; r < kDim; ++r) pair.vector[r] = v(static_cast<Eigen::Index>(r));
  }
  if (worst > bound && worst > 0.0)
    throw OracleFailure("eigenpair residual " + std::to_string(worst) + " exceeds bound " + std::to_string(bound),
                        worst);
  return pairs;
}

struct SpectrumMatch {
  /// permutation[k] = index in the reference matched by found pair k.
  std::array<std::size_t, kDim> permutation{};
  double max_value_error = 0.0;
  /// Largest ||u - e^{i a} v|| over matched vectors, a chosen to minimize it.
  double max_vector_error = 0.0;
};

class SpectrumMismatch : public std::runtime_error {
 public:
  SpectrumMismatch(const std::string& what, const SpectrumMatch& best) : std::runtime_error(what), best(best) {}
  SpectrumMatch best;
};

/// Distance between unit vectors after optimal phase alignment.
inline double phase_aligned_distance(const Vector5& u, const Vector5& v) {
  const Complex overlap = inner(v, u);
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return norm(u - phase * v);
}

/// Best pairing of `found` against reference eigenvalues (and, when given,
/// reference vectors), by exhaustive search over all 120 permutations
/// minimizing the largest eigenvalue error. Vectors are checked against
/// vector_tol, which defaults to tol.
inline SpectrumMatch match_spectra(const EigenPairs& found, const Vector5& reference_values,
                                   const std::optional<std::array<Vector5, kDim>>& reference_vectors, double tol,
                                   std::optional<double> vector_tol = std::nullopt) {
  std::array<std::size_t, kDim> perm;
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  SpectrumMatch best;
  best.max_value_error = std::numeric_limits<double>::infinity();
  do {
    double err = 0.0;
    for (std::size_t k = 0; k < kDim; ++k) err = std::max(err, std::abs(found[k].value - reference_values[perm[k]]));
    if (err < best.max_value_error) {
      best.max_value_error = err;
      best.permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (reference_vectors)
    for (std::size_t k = 0; k < kDim; ++k)
      best.max_vector_error = std::max(
          best.max_vector_error, phase_aligned_distance(found[k].vector, (*reference_vectors)[best.permutation[k]]));

  if (best.max_value_error > tol || best.max_vector_error > vector_tol.value_or(tol))
    throw SpectrumMismatch("spectra differ: value error " + std::to_string(best.max_value_error) +
                               ", vector error " + std::to_string(best.max_vector_error),
                           best);
  return best;
}

}  // namespace spinmat
