#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "lax2d/grid.hpp"

namespace lax2d {

using Complex = std::complex<double>;

/// Real scalar field sampled at grid nodes; values[i*n + j] = f(x_i, y_j)
/// (row index i runs along x, column index j along y).
struct RealField {
  Grid grid;
  std::vector<double> values;

  explicit RealField(Grid g) : grid(g), values(static_cast<size_t>(g.size()), 0.0) {}

  double& at(int i, int j) { return values[static_cast<size_t>(i) * grid.n + j]; }
  double at(int i, int j) const { return values[static_cast<size_t>(i) * grid.n + j]; }
};

/// Complex-valued physical field, same layout as RealField.
struct ComplexField {
  Grid grid;
  std::vector<Complex> values;

  explicit ComplexField(Grid g) : grid(g), values(static_cast<size_t>(g.size()), Complex(0.0, 0.0)) {}

  Complex& at(int i, int j) { return values[static_cast<size_t>(i) * grid.n + j]; }
  const Complex& at(int i, int j) const { return values[static_cast<size_t>(i) * grid.n + j]; }
};

/// Fourier coefficients fhat_k in DFT storage order (see Grid).
///
/// `band`, when set, declares that every coefficient with
/// max(|kx|,|ky|) > band is exactly zero; the exact bracket requires
/// declared bands on both operands. `real_valued` marks fields carrying
/// exact conjugate symmetry fhat_{-k} = conj(fhat_k); operations preserve
/// the symmetry bit-exactly (re-symmetrizing after transforms).
struct SpectralField {
  Grid grid;
  std::vector<Complex> coeffs;
  std::optional<int> band;
  bool real_valued = false;

  explicit SpectralField(Grid g) : grid(g), coeffs(static_cast<size_t>(g.size()), Complex(0.0, 0.0)) {}

  Complex& at_index(int si, int sj) { return coeffs[static_cast<size_t>(si) * grid.n + sj]; }
  const Complex& at_index(int si, int sj) const { return coeffs[static_cast<size_t>(si) * grid.n + sj]; }

  /// Coefficient for wavenumber (kx, ky), each in [-n/2, n/2-1].
  Complex& at_mode(int kx, int ky) { return at_index(grid.index_of(kx), grid.index_of(ky)); }
  const Complex& at_mode(int kx, int ky) const { return at_index(grid.index_of(kx), grid.index_of(ky)); }
};

}  // namespace lax2d
