#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lax2d/dynamics.hpp"

namespace lax2d {

/// Outcome of one residual check. `relative` is residual_norm divided by
/// max(reference_scale, 1e-13 / tolerance), so a vanishing scale degrades to
/// the absolute comparison residual <= 1e-13. passed <=> relative <= tolerance.
struct ResidualReport {
  std::string name;
  double residual_norm = 0.0;
  double reference_scale = 0.0;
  double relative = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::map<std::string, std::string> context;

  static ResidualReport make(std::string name, double residual, double scale, double tolerance,
                             std::map<std::string, std::string> context = {});
};

/// Residual of the operator-compatibility identity applied to a probe phi:
///   r = {dОmega/dt, phi} - ({omega, {psi, phi}} - {psi, {omega, phi}}),
/// with dOmega/dt := -{psi, omega} and every bracket evaluated exactly.
/// By the Jacobi identity r vanishes in exact arithmetic precisely because
/// the substituted time derivative solves the vorticity equation, so the
/// report measures accumulated roundoff only. The reference scale is
/// ||omega|| * ||psi|| * ||grad phi||.
///
/// `euler_defect`, when given, is added to the substituted time derivative
/// (the sensitivity hook: a defect d makes r = {d, phi} exactly).
ResidualReport compatibility_residual(const SpectralField& omega, const SpectralField& phi,
                                      const SpectralField* euler_defect = nullptr,
                                      double tolerance = 1e-11);

/// Residual of the lambda-graded zero-curvature identity for the modified
/// system (D1 S = D2 Omega, dOmega/dt = -{S, Omega}):
///   r = {dOmega/dt, phi} - lambda*{D1 S - D2 Omega, phi} + {{S, Omega}, phi}.
ResidualReport zakharov_residual(const SpectralField& omega, const SpectralField& phi,
                                 const ZakharovParams& params, double tolerance = 1e-11);

/// Negative control for the compatibility check: perturbs the substituted
/// time derivative by delta * cos x and reports |log10(relative / delta)|
/// against tolerance 1, i.e. passes iff the measured response sits within a
/// factor of 10 of delta. Demonstrates that the check can fail.
ResidualReport compatibility_delta_control(const SpectralField& omega, const SpectralField& phi,
                                           double delta);

/// Antisymmetry, bilinearity, Leibniz, Jacobi and zero-mean checks on seeded
/// random fields. With `aliased` set the brackets are evaluated without
/// padding (negative control: Jacobi and Leibniz must then fail).
std::vector<ResidualReport> bracket_identity_suite(Grid grid, int band, std::uint64_t seed,
                                                   int trials, bool aliased = false);

struct ConservationOptions {
  std::string ic = "perturbed-shear";
  std::map<std::string, double> ic_params;
  std::uint64_t seed = 0;
  double dt = 1e-3;
  double T = 1.0;
  int samples = 10;
  bool order_study = false;
  double tolerance = 1e-6;       // energy / enstrophy drift gate
  double tolerance_casimir = 1e-6;
};

/// Runs the flow and reports relative drifts of E, Z, C3, C4 (Casimirs are
/// normalized by max(|C_n(0)|, rms(omega)^n) since C3 often starts at zero),
/// plus the dt-halving self-convergence order when requested.
std::vector<ResidualReport> conservation_suite(Grid grid, const ConservationOptions& options);

/// Deterministic random fields for probes and trials. The real variant is
/// conjugate-symmetric with unit enstrophy (it matches the "random-band"
/// initial condition); the complex variant has independent coefficients on
/// every nonzero mode of the band box and unit L2 norm.
SpectralField random_real_field(Grid grid, int band, std::uint64_t seed);
SpectralField random_complex_field(Grid grid, int band, std::uint64_t seed);

/// Deterministic sub-seed derivation shared by the suites (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream);

}  // namespace lax2d
