#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace spinmat {

/// Named numeric thresholds; every algorithm takes these as parameters.
struct Tolerances {
  double unitarity = 1e-12;  ///< amplitude table orthonormality
  double eigen = 1e-10;      ///< ||M xi - lambda xi|| for generated matrices
  double classify = 1e-10;   ///< entrywise structure tests
  double skip = 1e-10;       ///< relative |xi| below which a row quotient is skipped
  double verify = 1e-6;      ///< per-row agreement when accepting a recovered point
  double bisect = 1e-12;     ///< bracket width at which bisection stops
  double refine = 1e-8;      ///< termwise residual norm accepted by multistart
  double oracle = 1e-8;      ///< oracle eigenpair residual and spectrum match
  double match = 1e-6;       ///< eigenvector match after phase alignment
  double root = 1e-9;        ///< |S| at the generating point, relative to max(1, ||M||_max)

  static constexpr std::array<std::pair<std::string_view, double Tolerances::*>, 10> fields() {
    return {{{"unitarity", &Tolerances::unitarity},
             {"eigen", &Tolerances::eigen},
             {"classify", &Tolerances::classify},
             {"skip", &Tolerances::skip},
             {"verify", &Tolerances::verify},
             {"bisect", &Tolerances::bisect},
             {"refine", &Tolerances::refine},
             {"oracle", &Tolerances::oracle},
             {"match", &Tolerances::match},
             {"root", &Tolerances::root}}};
  }

  /// Overrides one field by name; false if the name is unknown.
  bool set(std::string_view name, double value) {
    for (const auto& [field_name, member] : fields()) {
      if (field_name == name) {
        this->*member = value;
        return true;
      }
    }
    return false;
  }
};

}  // namespace spinmat
