#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "spinmat/amplitudes.hpp"
#include "spinmat/generator.hpp"

namespace spinmat {

/// Seeded source of random directions, parameter points and spectra.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Direction direction() { return {uniform(0.0, kPi), uniform(0.0, kTwoPi)}; }

  ParameterPoint point() { return {direction(), direction()}; }

  /// Random point with phi' = phi.
  ParameterPoint point_with_equal_phi() {
    const Direction c = direction();
    return {c, Direction(uniform(0.0, kPi), c.phi())};
  }

  Spectrum real_spectrum(double bound = 10.0) {
    Vector5 v;
    for (auto& z : v) z = uniform(-bound, bound);
    return Spectrum(v);
  }

  Spectrum imaginary_spectrum(double bound = 10.0) {
    Vector5 v;
    for (auto& z : v) z = Complex(0.0, uniform(-bound, bound));
    return Spectrum(v);
  }

  /// Uniform in the disc |lambda| <= bound.
  Spectrum complex_spectrum(double bound = 10.0) {
    Vector5 v;
    for (auto& z : v) z = std::polar(bound * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, kTwoPi));
    return Spectrum(v);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace spinmat
