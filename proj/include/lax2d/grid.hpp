#pragma once

#include <string>

#include "lax2d/errors.hpp"

namespace lax2d {

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Uniform n-by-n grid on the periodic square [0, 2*pi)^2 with nodes
// x_i = 2*pi*i/n. Fields follow the convention
//   f(x) = sum_k fhat_k exp(i k.x),  k in {-n/2, ..., n/2-1}^2,
// and coefficients are stored in DFT order: storage index s holds
// wavenumber s for s < n/2 and s - n otherwise.
struct Grid {
  int n = 0;

  static Grid make(int n) {
    if (n < 8 || n % 2 != 0)
      throw ConfigError("grid size must be even and >= 8, got " + std::to_string(n));
    return Grid{n};
  }

  int size() const { return n * n; }
  // Largest representable wavenumber magnitude, n/2 - 1.
  int max_mode() const { return n / 2 - 1; }
  int wavenumber(int idx) const { return idx < n / 2 ? idx : idx - n; }
  int index_of(int k) const { return k >= 0 ? k : k + n; }
  double coord(int i) const { return kTwoPi * i / n; }

  bool operator==(const Grid&) const = default;
};

}  // namespace lax2d
