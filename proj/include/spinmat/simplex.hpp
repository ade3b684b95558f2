#pragma once

// Derivative-free Nelder-Mead descent over R^N.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace spinmat {

struct SimplexOptions {
  int max_iterations = 500;
  /// Stop once every vertex lies within this distance (max-norm) of the best one.
  double x_tolerance = 1e-14;
  /// ... or once the objective spread over the simplex falls below this.
  double f_tolerance = 1e-32;
};

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

template <std::size_t N, class Objective>
SimplexResult<N> nelder_mead(Objective&& f, const std::array<double, N>& start, const std::array<double, N>& step,
                             const SimplexOptions& options = {}) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> vertex;
  std::array<double, N + 1> value;
  vertex[0] = start;
  for (std::size_t k = 0; k < N; ++k) {
    vertex[k + 1] = start;
    vertex[k + 1][k] += step[k];
  }
  for (std::size_t k = 0; k <= N; ++k) value[k] = f(vertex[k]);

  auto along = [](const Point& from, const Point& to, double t) {
    Point p;
    for (std::size_t k = 0; k < N; ++k) p[k] = from[k] + t * (to[k] - from[k]);
    return p;
  };

  std::array<std::size_t, N + 1> order;
  SimplexResult<N> result;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    const std::size_t best = order.front(), worst = order.back(), second_worst = order[N - 1];

    double spread = 0.0;
    for (std::size_t k = 0; k <= N; ++k)
      for (std::size_t d = 0; d < N; ++d) spread = std::max(spread, std::abs(vertex[k][d] - vertex[best][d]));
    if (spread < options.x_tolerance || value[worst] - value[best] <= options.f_tolerance) {
      result.converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t k = 0; k <= N; ++k) {
      if (k == worst) continue;
      for (std::size_t d = 0; d < N; ++d) centroid[d] += vertex[k][d] / static_cast<double>(N);
    }

    const Point reflected = along(vertex[worst], centroid, 2.0);
    const double f_reflected = f(reflected);
    if (f_reflected < value[best]) {
      const Point expanded = along(vertex[worst], centroid, 3.0);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        vertex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        vertex[worst] = reflected;
        value[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < value[second_worst]) {
      vertex[worst] = reflected;
      value[worst] = f_reflected;
      continue;
    }

    const bool outside = f_reflected < value[worst];
    const Point contracted = outside ? along(centroid, reflected, 0.5) : along(centroid, vertex[worst], 0.5);
    const double f_contracted = f(contracted);
    if (f_contracted < (outside ? f_reflected : value[worst])) {
      vertex[worst] = contracted;
      value[worst] = f_contracted;
      continue;
    }

    for (std::size_t k = 0; k <= N; ++k) {
      if (k == best) continue;
      vertex[k] = along(vertex[best], vertex[k], 0.5);
      value[k] = f(vertex[k]);
    }
  }

  const std::size_t best =
      static_cast<std::size_t>(std::min_element(value.begin(), value.end()) - value.begin());
  result.x = vertex[best];
  result.value = value[best];
  result.iterations = it;
  return result;
}

}  // namespace spinmat
