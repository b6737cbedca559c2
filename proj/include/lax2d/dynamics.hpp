#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lax2d/spectral.hpp"

namespace lax2d {

/// Fixed-step classical 4-stage Runge-Kutta integrator parameters.
/// The CFL check dt * max|velocity| * n / (2*pi) <= 0.5 is advisory:
/// violations emit a warning, never an error.
struct TimeStepper {
  double dt = 1e-3;
  bool warn_cfl = true;

  static TimeStepper make(double dt, bool warn_cfl = true) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    return TimeStepper{dt, warn_cfl};
  }
};

/// An eigenfunction candidate co-transported with the flow, tagged with the
/// eigenvalue it was lifted from.
struct TrackedMode {
  SpectralField phi;
  Complex lambda;
};

/// Time-stamped state: vorticity plus optionally co-evolved eigenfunctions.
struct FlowState {
  double time = 0.0;
  SpectralField omega;
  std::vector<TrackedMode> phis;

  explicit FlowState(SpectralField omega0) : omega(std::move(omega0)) {}
};

/// Right-hand side of the vorticity equation: -{psi, omega} with
/// psi = poisson_solve(omega), dealiased; the output mean is pinned to zero.
SpectralField euler_rhs(const SpectralField& omega);

/// Transport right-hand side for an eigenfunction candidate: -{psi, phi}.
SpectralField phi_rhs(const SpectralField& omega, const SpectralField& phi);

/// One RK4 step advancing omega and every tracked phi simultaneously; each
/// stage recomputes the stream function from the stage vorticity so that the
/// phi transport sees a stage-consistent generator.
FlowState step(const FlowState& state, const TimeStepper& stepper);

/// Convenience loop around step().
FlowState advance(FlowState state, const TimeStepper& stepper, int steps);

/// Pointwise maximum flow speed, used by the advisory CFL check.
double max_velocity(const SpectralField& omega);

struct ZakharovParams {
  enum class ResonancePolicy { Error, ZeroGauge };

  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  Complex lambda{0.0, 0.0};
  ResonancePolicy policy = ResonancePolicy::Error;

  static ZakharovParams make(double alpha, double beta, double gamma, double delta,
                             Complex lambda, ResonancePolicy policy = ResonancePolicy::Error) {
    if (alpha == 0.0 && beta == 0.0)
      throw ConfigError("Zakharov directional derivative D1 must be nonzero: (alpha, beta) != (0, 0)");
    return ZakharovParams{alpha, beta, gamma, delta, lambda, policy};
  }
};

struct ZakharovSolution {
  SpectralField S;
  // Modes on the resonant line alpha*kx + beta*ky = 0 where the right-hand
  // side does not vanish; empty unless the zero-gauge policy swallowed them.
  std::vector<std::array<int, 2>> unsolvable_modes;
};

/// Solves D1 S = D2 Omega mode by mode: Shat_k = ((gamma*kx + delta*ky) /
/// (alpha*kx + beta*ky)) * omegahat_k off the resonant line, Shat_0 = 0.
/// Resonant modes carrying a nonzero right-hand side are unsolvable: the
/// Error policy throws a NumericError listing them, ZeroGauge sets Shat_k = 0
/// and records them in the solution.
ZakharovSolution zakharov_solve_S(const SpectralField& omega, const ZakharovParams& params);

/// -{S, omega}, dealiased, with S from zakharov_solve_S.
SpectralField zakharov_rhs(const SpectralField& omega, const ZakharovParams& params);

/// Transverse wavenumber of the perturbed-shear initial condition.
inline constexpr int kPerturbedShearMode = 8;

/// Named zero-mean vorticity fields:
///   "shear"           cos y
///   "taylor-green"    2 cos x cos y
///   "perturbed-shear" cos y + eps*cos 8x            (param eps, default 0.1)
///   "random-band"     seeded Gaussian coefficients, conjugate-symmetric,
///                     unit enstrophy                (param band, default 8)
/// The same seed yields a bit-identical field.
SpectralField initial_condition(const std::string& name, const std::map<std::string, double>& params,
                                Grid grid, std::uint64_t seed);

struct Diagnostics {
  double energy = 0.0;     // E  = 1/2 sum_{k!=0} |omegahat_k|^2 / |k|^2
  double enstrophy = 0.0;  // Z  = 1/2 sum_k |omegahat_k|^2
  double casimir3 = 0.0;   // C3 = (1/(2pi)^2) integral omega^3
  double casimir4 = 0.0;   // C4 = (1/(2pi)^2) integral omega^4
};

/// Conserved quantities; the Casimir integrals are evaluated on a grid padded
/// for exactness at the field's declared band.
Diagnostics diagnostics(const SpectralField& omega);

}  // namespace lax2d
