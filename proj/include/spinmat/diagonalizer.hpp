#pragma once

// Recovery of the generating parameter point of a matrix of the form
// M = U(x) diag(lambda) U(x)^dagger.
//
// For a trial point x with eigenvector candidates xi_i = column i of U(x) and
// w_i = M xi_i, the residual bracket for eigenvalue i and rows r < s is
//   b_irs = xi_i[s] w_i[r] - xi_i[r] w_i[s],
// which vanishes for every (r, s) exactly when xi_i is an eigenvector. The
// residual sum S(x) = sum_i sum_{r<s} b_irs is zero at the generating point.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinmat/amplitudes.hpp"
#include "spinmat/generator.hpp"
#include "spinmat/linalg.hpp"
#include "spinmat/simplex.hpp"

namespace spinmat {

inline constexpr std::size_t kRowPairs = kDim * (kDim - 1) / 2;

/// (r, s) with r < s in lexicographic order.
inline constexpr std::array<std::pair<std::size_t, std::size_t>, kRowPairs> kRowPairIndex = [] {
  std::array<std::pair<std::size_t, std::size_t>, kRowPairs> pairs{};
  std::size_t k = 0;
  for (std::size_t r = 0; r + 1 < kDim; ++r)
    for (std::size_t s = r + 1; s < kDim; ++s) pairs[k++] = {r, s};
  return pairs;
}();

/// Every bracket b_irs at one trial point.
struct ResidualTerms {
  std::array<std::array<Complex, kRowPairs>, kDim> brackets{};

  Complex per_eigenvalue(std::size_t i) const {
    Complex s = 0.0;
    for (const auto& b : brackets[i]) s += b;
    return s;
  }

  Complex total() const {
    Complex s = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) s += per_eigenvalue(i);
    return s;
  }

  double sum_of_squares() const {
    double s = 0.0;
    for (const auto& row : brackets)
      for (const auto& b : row) s += std::norm(b);
    return s;
  }
};

/// Brackets for eigenvector candidates given as the columns of u.
inline ResidualTerms residual_terms(const Matrix5& m, const Matrix5& u) {
  ResidualTerms terms;
  for (std::size_t i = 0; i < kDim; ++i) {
    const Vector5 x = u.column(i);
    const Vector5 w = m * x;
    for (std::size_t k = 0; k < kRowPairs; ++k) {
      const auto [r, s] = kRowPairIndex[k];
      terms.brackets[i][k] = x[s] * w[r] - x[r] * w[s];
    }
  }
  return terms;
}

inline ResidualTerms residual_terms(const Matrix5& m, const ParameterPoint& point) {
  return residual_terms(m, eigenvector_matrix(point));
}

struct ResidualReport {
  Complex value{};
  std::array<Complex, kDim> per_eigenvalue{};
  ParameterPoint point;
  /// (i, r) whose denominator |xi_i[r]| fell below the skip threshold.
  std::vector<std::pair<std::size_t, std::size_t>> skipped_rows;
};

/// Cross-multiplied residual S(x); nothing is divided, so nothing is skipped.
inline ResidualReport residual(const Matrix5& m, const ParameterPoint& point) {
  const ResidualTerms terms = residual_terms(m, point);
  ResidualReport report;
  report.point = point;
  for (std::size_t i = 0; i < kDim; ++i) report.per_eigenvalue[i] = terms.per_eigenvalue(i);
  report.value = terms.total();
  return report;
}

namespace detail {

inline bool skipped(const Vector5& x, std::size_t r, double skip) {
  double scale = 0.0;
  for (const auto& z : x) scale = std::max(scale, std::abs(z));
  return std::abs(x[r]) < skip * scale;
}

}  // namespace detail

/// Quotient form of the residual, sum_i sum_{r<s} [(lambda_i)_r - (lambda_i)_s],
/// omitting every pair that touches a skipped row.
inline ResidualReport quotient_residual(const Matrix5& m, const ParameterPoint& point, double skip = 1e-10) {
  const Matrix5 u = eigenvector_matrix(point);
  ResidualReport report;
  report.point = point;
  for (std::size_t i = 0; i < kDim; ++i) {
    const Vector5 x = u.column(i);
    const Vector5 w = m * x;
    std::array<bool, kDim> skip_row{};
    for (std::size_t r = 0; r < kDim; ++r) {
      skip_row[r] = detail::skipped(x, r, skip);
      if (skip_row[r]) report.skipped_rows.emplace_back(i, r);
    }
    Complex sum = 0.0;
    for (const auto& [r, s] : kRowPairIndex) {
      if (skip_row[r] || skip_row[s]) continue;
      sum += w[r] / x[r] - w[s] / x[s];
    }
    report.per_eigenvalue[i] = sum;
    report.value += sum;
  }
  return report;
}

/// (lambda_i)_r = (M xi_i)[r] / xi_i[r], or nullopt when xi_i[r] is negligible.
inline std::optional<Complex> row_eigenvalue(const Matrix5& m, std::size_t i, std::size_t r,
                                             const ParameterPoint& point, double skip = 1e-10) {
  detail::check_index(i, "eigen");
  detail::check_index(r, "row");
  const Vector5 x = eigenvector_matrix(point).column(i);
  if (detail::skipped(x, r, skip)) return std::nullopt;
  const Vector5 w = m * x;
  return w[r] / x[r];
}

using ConsistencyTable = std::array<std::array<std::optional<Complex>, kDim>, kDim>;

struct RecoveryResult {
  ParameterPoint point;
  EigenPairs pairs{};
  /// consistency[i][r] = (lambda_i)_r, absent where row r was skipped.
  ConsistencyTable consistency{};
  double max_spread = 0.0;

  Vector5 spectrum() const {
    Vector5 v;
    for (std::size_t i = 0; i < kDim; ++i) v[i] = pairs[i].value;
    return v;
  }
};

class IndeterminateEigenvalue : public std::runtime_error {
 public:
  explicit IndeterminateEigenvalue(std::size_t i)
      : std::runtime_error("indeterminate eigenvalue " + std::to_string(i) + ": every row was skipped"), index(i) {}
  std::size_t index;
};

/// Eigen-data at a trial point: lambda_i is the mean of the valid per-row
/// quotients and xi_i the analytic eigenvector.
inline RecoveryResult recover_spectrum(const Matrix5& m, const ParameterPoint& point, double skip = 1e-10) {
  const Matrix5 u = eigenvector_matrix(point);
  RecoveryResult result;
  result.point = point;
  for (std::size_t i = 0; i < kDim; ++i) {
    const Vector5 x = u.column(i);
    const Vector5 w = m * x;
    Complex sum = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < kDim; ++r) {
      if (detail::skipped(x, r, skip)) continue;
      result.consistency[i][r] = w[r] / x[r];
      sum += *result.consistency[i][r];
      ++count;
    }
    if (count == 0) throw IndeterminateEigenvalue(i);
    result.pairs[i] = {sum / static_cast<double>(count), x};
    for (std::size_t r = 0; r < kDim; ++r)
      for (std::size_t s = r + 1; s < kDim; ++s)
        if (result.consistency[i][r] && result.consistency[i][s])
          result.max_spread =
              std::max(result.max_spread, std::abs(*result.consistency[i][r] - *result.consistency[i][s]));
  }
  return result;
}

struct ConsistencyReport {
  bool passed = false;
  double max_spread = std::numeric_limits<double>::infinity();
  double max_eigen_residual = std::numeric_limits<double>::infinity();
  /// Both criteria are compared against tol * scale, scale = max(1, ||M||_max).
  double scale = 1.0;
  std::optional<RecoveryResult> recovery;
};

/// Accepts a point only if, for every eigenvalue, the per-row estimates agree
/// and the recovered pair satisfies the eigen-equation.
inline ConsistencyReport verify_recovery(const Matrix5& m, const ParameterPoint& point, double tol,
                                         double skip = 1e-10) {
  ConsistencyReport report;
  report.scale = std::max(1.0, max_abs(m));
  try {
    report.recovery = recover_spectrum(m, point, skip);
  } catch (const IndeterminateEigenvalue&) {
    return report;
  }
  report.max_spread = report.recovery->max_spread;
  report.max_eigen_residual = 0.0;
  for (const auto& pair : report.recovery->pairs)
    report.max_eigen_residual = std::max(report.max_eigen_residual, norm(m * pair.vector - pair.value * pair.vector));
  report.passed = report.max_spread < tol * report.scale && report.max_eigen_residual < tol * report.scale;
  return report;
}

/// Failure of a recovery strategy; carries the best point examined.
class RecoveryError : public std::runtime_error {
 public:
  RecoveryError(const std::string& what, std::optional<ParameterPoint> best, double best_metric)
      : std::runtime_error(what), best_point(best), best_metric(best_metric) {}
  std::optional<ParameterPoint> best_point;
  /// Smallest per-row spread (bisection) or termwise objective (multistart).
  double best_metric;
};

class NoRootInBracket : public RecoveryError {
  using RecoveryError::RecoveryError;
};
class SpuriousRoot : public RecoveryError {
  using RecoveryError::RecoveryError;
};
class RecoveryFailed : public RecoveryError {
  using RecoveryError::RecoveryError;
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Natural range of an angle: [0, pi] or [0, 2 pi].
inline Bracket full_bracket(Angle a) { return {0.0, is_polar(a) ? kPi : kTwoPi}; }

struct BisectionOptions {
  /// Width at which a sign-change interval is considered located.
  double tol = 1e-12;
  double verify_tol = 1e-6;
  double skip = 1e-10;
  /// Uniform scan densities, tried in order until a verified root appears.
  std::vector<int> scan_samples{64, 256, 1024};
  int max_halvings = 200;
};

namespace detail {

inline constexpr std::size_t kChannels = 2 + 2 * kDim;

/// Real scalar channels searched for sign changes: Re S, Im S, then
/// Re S_i and Im S_i for each eigenvalue i.
inline std::array<double, kChannels> channels(const ResidualTerms& terms) {
  std::array<double, kChannels> c{};
  const Complex total = terms.total();
  c[0] = total.real();
  c[1] = total.imag();
  for (std::size_t i = 0; i < kDim; ++i) {
    const Complex s = terms.per_eigenvalue(i);
    c[2 + i] = s.real();
    c[2 + kDim + i] = s.imag();
  }
  return c;
}

}  // namespace detail

/// One-dimensional recovery: three angles of `known` are held fixed and the
/// `free` one is located inside `bracket` by bisection on the residual.
///
/// Every sign change of Re S (and, since S alone does not depend on theta,
/// of Im S and of the per-eigenvalue sums S_i) found on a uniform scan is
/// bisected; the candidate passing verify_recovery with the smallest spread
/// is returned.
inline ParameterPoint bisect_recover(const Matrix5& m, const ParameterPoint& known, Angle free, Bracket bracket,
                                     const BisectionOptions& options = {}) {
  const Bracket range = full_bracket(free);
  if (!(bracket.lo < bracket.hi) || bracket.lo < range.lo || bracket.hi > range.hi)
    throw std::domain_error(std::string("bracket must satisfy ") + std::to_string(range.lo) + " <= lo < hi <= " +
                            std::to_string(range.hi) + " for " + angle_name(free));

  const Matrix5 fixed_m = m;
  auto channels_at = [&](double t) { return detail::channels(residual_terms(fixed_m, known.with(free, t))); };

  bool any_sign_change = false;
  std::optional<ParameterPoint> best_verified;
  double best_verified_spread = std::numeric_limits<double>::infinity();
  std::optional<ParameterPoint> best_rejected;
  double best_rejected_spread = std::numeric_limits<double>::infinity();

  for (const int samples : options.scan_samples) {
    std::vector<double> t(static_cast<std::size_t>(samples) + 1);
    std::vector<std::array<double, detail::kChannels>> values(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      t[k] = bracket.lo + (bracket.hi - bracket.lo) * static_cast<double>(k) / samples;
      values[k] = channels_at(t[k]);
    }

    std::vector<double> candidates;
    for (std::size_t c = 0; c < detail::kChannels; ++c) {
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (values[k][c] == 0.0) {
          candidates.push_back(t[k]);
          continue;
        }
        if (k + 1 == t.size() || values[k + 1][c] == 0.0) continue;
        if (std::signbit(values[k][c]) == std::signbit(values[k + 1][c])) continue;

        double a = t[k], b = t[k + 1];
        const bool a_negative = std::signbit(values[k][c]);
        for (int h = 0; h < options.max_halvings && b - a > options.tol; ++h) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          const double v = channels_at(mid)[c];
          if (v == 0.0) {
            a = b = mid;
            break;
          }
          (std::signbit(v) == a_negative ? a : b) = mid;
        }
        candidates.push_back(0.5 * (a + b));
      }
    }
    any_sign_change = any_sign_change || !candidates.empty();

    std::sort(candidates.begin(), candidates.end());
    double last = -std::numeric_limits<double>::infinity();
    for (const double c : candidates) {
      if (c - last <= options.tol) continue;
      last = c;
      const ParameterPoint p = known.with(free, c);
      const ConsistencyReport report = verify_recovery(m, p, options.verify_tol, options.skip);
      if (report.passed && report.max_spread < best_verified_spread) {
        best_verified = p;
        best_verified_spread = report.max_spread;
      } else if (!report.passed && report.max_spread < best_rejected_spread) {
        best_rejected = p;
        best_rejected_spread = report.max_spread;
      }
    }
    if (best_verified) return *best_verified;
  }

  if (!any_sign_change)
    throw NoRootInBracket(std::string("no sign change of the residual for ") + angle_name(free) + " in [" +
                              std::to_string(bracket.lo) + ", " + std::to_string(bracket.hi) + "]",
                          std::nullopt, std::numeric_limits<double>::infinity());
  throw SpuriousRoot(std::string("every residual root for ") + angle_name(free) + " failed verification",
                     best_rejected, best_rejected_spread);
}

struct MultistartOptions {
  int grid_density = 12;
  /// Termwise residual norm (relative to ||M||_max) a refined point must reach.
  double refine_tol = 1e-8;
  double verify_tol = 1e-6;
  double skip = 1e-10;
  std::size_t refined_cells = 16;
  int max_iterations = 500;
};

/// Termwise least-squares objective sum_i sum_{r<s} |b_irs|^2 / ||M||_max^2.
/// Zero exactly where every analytic vector is an eigenvector of M.
inline double termwise_objective(const Matrix5& m, const ParameterPoint& point) {
  const double scale = max_abs(m);
  const double s = residual_terms(m, point).sum_of_squares();
  return scale > 0.0 ? s / (scale * scale) : s;
}

/// Four-dimensional recovery without prior knowledge of the angles: a coarse
/// grid over (theta, phi, theta', phi'), then Nelder-Mead refinement of the
/// best cells. Returns the first refined point that passes verify_recovery.
inline ParameterPoint multistart_recover(const Matrix5& m, const MultistartOptions& options = {}) {
  if (options.grid_density < 2) throw std::domain_error("grid density must be at least 2");
  const auto n = static_cast<std::size_t>(options.grid_density);
  const double polar_step = kPi / static_cast<double>(n - 1);
  const double azimuth_step = kTwoPi / static_cast<double>(n);

  struct Cell {
    double value;
    std::array<double, 4> angles;
  };
  std::vector<Cell> cells;
  cells.reserve(n * n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          const std::array<double, 4> x{a * polar_step, b * azimuth_step, c * polar_step, d * azimuth_step};
          cells.push_back({termwise_objective(m, ParameterPoint::from_angles(x)), x});
        }
  const std::size_t keep = std::min(options.refined_cells, cells.size());
  std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(keep), cells.end(),
                    [](const Cell& x, const Cell& y) { return x.value < y.value; });

  auto objective = [&m](const std::array<double, 4>& x) {
    return termwise_objective(m, ParameterPoint::from_angles(x));
  };
  const std::array<double, 4> step{0.5 * polar_step, 0.5 * azimuth_step, 0.5 * polar_step, 0.5 * azimuth_step};
  SimplexOptions simplex;
  simplex.max_iterations = options.max_iterations;

  std::optional<ParameterPoint> best;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < keep; ++k) {
    const auto refined = nelder_mead<4>(objective, cells[k].angles, step, simplex);
    const ParameterPoint p = ParameterPoint::from_angles(refined.x);
    if (refined.value < best_value) {
      best_value = refined.value;
      best = p;
    }
    if (std::sqrt(refined.value) > options.refine_tol) continue;
    if (verify_recovery(m, p, options.verify_tol, options.skip).passed) return p;
  }
  throw RecoveryFailed("no refined grid cell passed verification", best, best_value);
}

}  // namespace spinmat
