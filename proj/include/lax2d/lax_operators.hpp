#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "lax2d/dynamics.hpp"

namespace lax2d {

/// Square box of Fourier modes max(|kx|,|ky|) <= K with k = (0,0) excluded
/// (both operators annihilate constants, so keeping it would only add a
/// trivial zero row/column). Ordering is lexicographic by (kx, ky) and
/// reproducible across runs. Dimension is (2K+1)^2 - 1.
struct ModeBox {
  int K = 0;
  std::vector<std::array<int, 2>> modes;

  static constexpr int kMaxK = 32;  // dense eigensolves stay desk-scale

  static ModeBox make(int K);
  int dim() const { return static_cast<int>(modes.size()); }
  /// Position of (kx, ky) in the ordering, or -1 if outside the box.
  int index_of(int kx, int ky) const;
};

enum class OperatorKind { LOfOmega, AOfPsi };

/// Dense truncation of a bracket operator on a mode box: entry (k, k') maps
/// phihat_{k'} to the k-coefficient of {g, phi}, i.e.
///   M[k,k'] = -(px*qy - py*qx) * ghat_p,  p = k - k', q = k',
/// where g is omega (kind L) or the stream function derived from it (kind A).
/// This equals the compression P_box {g, .} P_box. For real generating
/// fields M is skew-Hermitian and satisfies M[-k,-k'] = conj(M[k,k']).
struct OperatorMatrix {
  ModeBox box;
  OperatorKind kind = OperatorKind::LOfOmega;
  Eigen::MatrixXcd entries;

  double frobenius_norm() const { return entries.norm(); }
};

OperatorMatrix assemble_operator(const SpectralField& omega, OperatorKind kind, const ModeBox& box);

struct Eigensystem {
  /// Sorted by (imaginary part, real part, magnitude).
  Eigen::VectorXcd values;
  /// Columns aligned with values; empty when values_only was requested.
  Eigen::MatrixXcd vectors;
  /// True when the skew-Hermitian fast path was used (eigenvalues then have
  /// exactly zero real part).
  bool hermitian_path = false;
};

/// Full dense eigendecomposition. Matrices that are skew-Hermitian to
/// 1e-12 * ||M||_F are solved through the Hermitian form i*M; anything else
/// falls back to the general complex solver.
Eigensystem eigendecompose(const OperatorMatrix& m, bool values_only = false);

/// max_j ||M v_j - lambda_j v_j|| over unit eigenvectors, measured against
/// the original (not symmetrized) matrix.
double max_eigen_residual(const OperatorMatrix& m, const Eigensystem& eig);

/// Hausdorff distance between two finite sets of complex numbers.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Spectra of the truncated vorticity-bracket operator sampled along a flow.
struct SpectrumReport {
  int K = 0;
  std::vector<double> times;
  std::vector<std::vector<Complex>> spectra;  // sorted eigenvalues per time
  std::vector<double> drifts;                 // Hausdorff distance between consecutive spectra
  double matrix_norm = 0.0;                   // Frobenius norm of the t=0 operator
};

/// Evolves the vorticity with dynamics::step and assembles/diagonalizes the
/// truncated operator at each sample time. Sample times must be increasing,
/// start at 0, and be integer multiples of the step size.
SpectrumReport spectrum_along_flow(const SpectralField& ic, const TimeStepper& stepper, int K,
                                   const std::vector<double>& sample_times);

struct TransportCheck {
  Complex lambda{0.0, 0.0};
  double T = 0.0;
  int K = 0;
  int mode_index = 0;
  double stream_ratio = 0.0;    // c in psi = c * omega
  double transport_error = 0.0; // ||phi(T) - exp(-c*lambda*T) phi0|| / ||phi0||
  double norm_ratio = 1.0;      // ||phi(T)|| / ||phi0||
  double eigen_residual = 0.0;  // ||L phi(T) - lambda phi(T)|| / ||phi(T)||
};

/// Lifts eigenvector mode_index (sorted order; -1 selects the eigenvalue of
/// largest magnitude) of the truncated operator to a band-limited field,
/// co-evolves it under the box-projected transport generator with
/// stage-consistent stream functions, and compares against the closed form
/// phi(t) = exp(-c*lambda*t) phi0, valid for stationary states with
/// psi = c * omega. Requires a stationary initial condition.
TransportCheck eigenfunction_transport_check(const SpectralField& ic, int K, int mode_index,
                                             const TimeStepper& stepper, double T);

}  // namespace lax2d
