#pragma once

#include <utility>

#include "lax2d/field.hpp"

namespace lax2d {

enum class Axis { X, Y };

/// Forward transform, fhat_k = (1/n^2) sum_j f(x_j) exp(-i k.x_j).
/// The RealField overload enforces exact conjugate symmetry on the result
/// and flags it real_valued. Rejects non-finite input.
SpectralField to_spectral(const RealField& f);
SpectralField to_spectral(const ComplexField& f);

/// Inverse transform to physical space. to_real requires conjugate
/// symmetry to hold within 1e-12 (relative to the field norm) and
/// truncates the roundoff-level imaginary parts to exactly zero.
RealField to_real(const SpectralField& fh);
ComplexField to_complex(const SpectralField& fh);

/// Coefficient-wise multiplication by i*k_axis; the Nyquist line
/// k_axis = -n/2 is zeroed (its derivative is sign-ambiguous on real grids).
SpectralField derivative(const SpectralField& fh, Axis axis);

/// (ax*d/dx + ay*d/dy) f; both Nyquist lines zeroed.
SpectralField directional_derivative(const SpectralField& fh, double ax, double ay);

/// Multiplication by -|k|^2 (Nyquist included).
SpectralField laplacian(const SpectralField& fh);

/// Solves laplacian(psi) = omega with the zero-mean gauge psihat_0 = 0.
/// Requires |omegahat_0| <= 1e-12 * ||omega|| (periodic solvability).
SpectralField poisson_solve(const SpectralField& omega);

/// u = -d(psi)/dy, v = d(psi)/dx.
std::pair<RealField, RealField> velocity_from_stream(const SpectralField& psi);

/// Poisson bracket {f,g} = (df/dx)(dg/dy) - (df/dy)(dg/dx).
///
/// bracket_exact: alias-free evaluation on an internal grid of
/// M >= 2*(B1+B2)+2 points per dimension; exact to roundoff for fields
/// with declared bands B1, B2. The result (band B1+B2) must be
/// representable on the input grid. Throws if a band is missing or the
/// grid is too small.
SpectralField bracket_exact(const SpectralField& fh, const SpectralField& gh);

/// bracket_dealiased: evaluation on the native grid under the 2/3 rule
/// (modes with max(|kx|,|ky|) > n/3 zeroed in inputs and output). Fixed
/// cost; used inside time stepping where bands grow unboundedly.
SpectralField bracket_dealiased(const SpectralField& fh, const SpectralField& gh);

/// bracket_aliased: raw pointwise evaluation with no padding and no mask.
/// Deliberately inexact; exists as a negative control for the identity
/// suites.
SpectralField bracket_aliased(const SpectralField& fh, const SpectralField& gh);

/// Alias-free pointwise product of banded fields (padded like bracket_exact).
SpectralField multiply_exact(const SpectralField& fh, const SpectralField& gh);

/// Raw pointwise product on the native grid (negative-control companion).
SpectralField multiply_aliased(const SpectralField& fh, const SpectralField& gh);

/// Copies the modes representable on both grids (band-limited re-gridding;
/// Nyquist lines are not carried over).
SpectralField resample(const SpectralField& fh, Grid target);

/// Enforces exact conjugate symmetry by averaging (k, -k) pairs in place.
void symmetrize(SpectralField& fh);

/// Zeroes every coefficient with max(|kx|,|ky|) > band and records the band.
void enforce_band(SpectralField& fh, int band);

/// Largest |k| kept by the 2/3 rule on an n-point grid.
int dealias_cutoff(int n);

/// L2 norms under the normalization ||f||^2 = sum_k |fhat_k|^2
/// ( = (1/(2pi)^2) integral |f|^2 by Parseval).
double l2_norm(const SpectralField& fh);
double l2_norm(const RealField& f);
double l2_norm(const ComplexField& f);
/// sqrt(sum_k |k|^2 |fhat_k|^2), the L2 norm of the gradient.
double grad_norm(const SpectralField& fh);
double linf_norm(const RealField& f);

bool all_finite(const SpectralField& fh);

// Field arithmetic (bands combine as max, the real flag as logical and).
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);
SpectralField operator*(Complex s, const SpectralField& a);

}  // namespace lax2d
