#include "lax2d/dynamics.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace lax2d {

namespace {

void require_keys(const std::map<std::string, double>& params,
                  std::initializer_list<const char*> allowed, const std::string& name) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ConfigError("unknown parameter '" + key + "' for initial condition '" + name + "'");
  }
}

double param_or(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// splitmix64 mix of (seed, stream): deterministic sub-seeding that does not
// depend on the standard library's seed_seq.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void zero_mean(SpectralField& f) { f.at_mode(0, 0) = Complex(0.0, 0.0); }

SpectralField rhs_from_stream(const SpectralField& psi, const SpectralField& field) {
  SpectralField out = -1.0 * bracket_dealiased(psi, field);
  zero_mean(out);  // the bracket integrates to zero over the torus
  return out;
}

void check_finite(const SpectralField& f, const std::string& label, double time) {
  if (!all_finite(f)) {
    std::ostringstream msg;
    msg << "non-finite values in " << label << " after step to t=" << time;
    throw NumericError(msg.str());
  }
}

std::atomic<bool> cfl_warned{false};

}  // namespace

SpectralField euler_rhs(const SpectralField& omega) {
  return rhs_from_stream(poisson_solve(omega), omega);
}

SpectralField phi_rhs(const SpectralField& omega, const SpectralField& phi) {
  return -1.0 * bracket_dealiased(poisson_solve(omega), phi);
}

double max_velocity(const SpectralField& omega) {
  auto [u, v] = velocity_from_stream(poisson_solve(omega));
  double m = 0.0;
  for (size_t i = 0; i < u.values.size(); ++i)
    m = std::max(m, std::hypot(u.values[i], v.values[i]));
  return m;
}

FlowState step(const FlowState& state, const TimeStepper& stepper) {
  const double dt = stepper.dt;
  const size_t np = state.phis.size();

  struct Rate {
    SpectralField domega;
    std::vector<SpectralField> dphis;
  };
  auto rate = [&](const SpectralField& w, const std::vector<SpectralField>& phis) -> Rate {
    SpectralField psi = poisson_solve(w);
    Rate r{rhs_from_stream(psi, w), {}};
    r.dphis.reserve(phis.size());
    for (const SpectralField& p : phis) r.dphis.push_back(-1.0 * bracket_dealiased(psi, p));
    return r;
  };

  if (stepper.warn_cfl) {
    const double cfl = dt * max_velocity(state.omega) * state.omega.grid.n / kTwoPi;
    if (cfl > 0.5 && !cfl_warned.exchange(true))
      std::fprintf(stderr, "lax2d: warning: CFL number %.3f exceeds 0.5 at t=%g (dt may be too large)\n",
                   cfl, state.time);
  }

  std::vector<SpectralField> phis0;
  phis0.reserve(np);
  for (const TrackedMode& m : state.phis) phis0.push_back(m.phi);

  auto shifted = [&](const Rate& k, double c) {
    std::vector<SpectralField> out;
    out.reserve(np);
    for (size_t i = 0; i < np; ++i) out.push_back(phis0[i] + c * k.dphis[i]);
    return out;
  };

  const Rate k1 = rate(state.omega, phis0);
  const Rate k2 = rate(state.omega + (0.5 * dt) * k1.domega, shifted(k1, 0.5 * dt));
  const Rate k3 = rate(state.omega + (0.5 * dt) * k2.domega, shifted(k2, 0.5 * dt));
  const Rate k4 = rate(state.omega + dt * k3.domega, shifted(k3, dt));

  FlowState next(state.omega +
                 (dt / 6.0) * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega));
  next.time = state.time + dt;
  next.phis.reserve(np);
  for (size_t i = 0; i < np; ++i)
    next.phis.push_back(
        {phis0[i] + (dt / 6.0) * (k1.dphis[i] + 2.0 * k2.dphis[i] + 2.0 * k3.dphis[i] + k4.dphis[i]),
         state.phis[i].lambda});

  check_finite(next.omega, "omega", next.time);
  for (size_t i = 0; i < np; ++i)
    check_finite(next.phis[i].phi, "phi[" + std::to_string(i) + "]", next.time);
  return next;
}

FlowState advance(FlowState state, const TimeStepper& stepper, int steps) {
  for (int s = 0; s < steps; ++s) state = step(state, stepper);
  return state;
}

ZakharovSolution zakharov_solve_S(const SpectralField& omega, const ZakharovParams& params) {
  const Grid g = omega.grid;
  const double norm = l2_norm(omega);
  ZakharovSolution sol{SpectralField(g), {}};
  for (int si = 0; si < g.n; ++si) {
    const int kx = g.wavenumber(si);
    for (int sj = 0; sj < g.n; ++sj) {
      const int ky = g.wavenumber(sj);
      if (kx == 0 && ky == 0) continue;  // gauge: Shat_0 = 0
      const double d1 = params.alpha * kx + params.beta * ky;
      const double d2 = params.gamma * kx + params.delta * ky;
      const double d1_scale = std::abs(params.alpha) * std::abs(kx) + std::abs(params.beta) * std::abs(ky);
      const bool resonant = std::abs(d1) <= 1e-12 * d1_scale;
      if (!resonant) {
        sol.S.at_index(si, sj) = (d2 / d1) * omega.at_index(si, sj);
      } else if (std::abs(d2 * omega.at_index(si, sj)) > 1e-13 * norm) {
        sol.unsolvable_modes.push_back({kx, ky});
      }
      // resonant modes keep Shat_k = 0 (gauge when the right side vanishes,
      // zero-gauge policy otherwise)
    }
  }
  if (!sol.unsolvable_modes.empty() && params.policy == ZakharovParams::ResonancePolicy::Error) {
    std::ostringstream msg;
    msg << "Zakharov constraint D1 S = D2 Omega is unsolvable: " << sol.unsolvable_modes.size()
        << " resonant mode(s) on the line alpha*kx + beta*ky = 0 carry a nonzero right-hand side:";
    const size_t shown = std::min<size_t>(sol.unsolvable_modes.size(), 8);
    for (size_t i = 0; i < shown; ++i)
      msg << " (" << sol.unsolvable_modes[i][0] << "," << sol.unsolvable_modes[i][1] << ")";
    if (shown < sol.unsolvable_modes.size()) msg << " ...";
    throw NumericError(msg.str());
  }
  sol.S.band = omega.band;
  sol.S.real_valued = omega.real_valued;
  return sol;
}

SpectralField zakharov_rhs(const SpectralField& omega, const ZakharovParams& params) {
  ZakharovSolution sol = zakharov_solve_S(omega, params);
  SpectralField out = -1.0 * bracket_dealiased(sol.S, omega);
  zero_mean(out);
  return out;
}

SpectralField initial_condition(const std::string& name, const std::map<std::string, double>& params,
                                Grid grid, std::uint64_t seed) {
  SpectralField out(grid);
  if (name == "shear") {
    require_keys(params, {}, name);
    out.at_mode(0, 1) = 0.5;
    out.at_mode(0, -1) = 0.5;
    out.band = 1;
  } else if (name == "taylor-green") {
    require_keys(params, {}, name);
    for (int sx : {-1, 1})
      for (int sy : {-1, 1}) out.at_mode(sx, sy) = 0.5;
    out.band = 1;
  } else if (name == "perturbed-shear") {
    // cos y + eps*cos(8x). The transverse wavenumber must differ from the
    // base |k| = 1 shell (a same-shell perturbation keeps psi = -omega and
    // the flow exactly stationary), and it must be high enough that the
    // advective frequencies make time-integration error measurable above
    // roundoff in convergence studies.
    require_keys(params, {"eps"}, name);
    const double eps = param_or(params, "eps", 0.1);
    if (!std::isfinite(eps)) throw ConfigError("perturbed-shear: eps must be finite");
    if (grid.max_mode() < kPerturbedShearMode)
      throw ConfigError("perturbed-shear needs n >= " + std::to_string(2 * kPerturbedShearMode + 2));
    out.at_mode(0, 1) = 0.5;
    out.at_mode(0, -1) = 0.5;
    out.at_mode(kPerturbedShearMode, 0) = 0.5 * eps;
    out.at_mode(-kPerturbedShearMode, 0) = 0.5 * eps;
    out.band = kPerturbedShearMode;
  } else if (name == "random-band") {
    require_keys(params, {"band"}, name);
    const double braw = param_or(params, "band", 8.0);
    const int band = static_cast<int>(braw);
    if (braw != band || band < 0 || band > grid.max_mode())
      throw ConfigError("random-band: band must be an integer in [0, n/2-1]");
    std::mt19937_64 rng(mix_seed(seed, 0));
    std::normal_distribution<double> gauss(0.0, 1.0);
    // Draw one complex Gaussian per conjugate pair, lexicographic order.
    for (int kx = 0; kx <= band; ++kx) {
      const int ky_lo = kx == 0 ? 1 : -band;
      for (int ky = ky_lo; ky <= band; ++ky) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        out.at_mode(kx, ky) = Complex(re, im);
        out.at_mode(-kx, -ky) = Complex(re, -im);
      }
    }
    double enstrophy = 0.0;
    for (const Complex& c : out.coeffs) enstrophy += 0.5 * std::norm(c);
    if (enstrophy > 0.0) {
      const double s = 1.0 / std::sqrt(enstrophy);
      for (Complex& c : out.coeffs) c *= s;
    }
    out.band = band;
  } else {
    throw ConfigError("unknown initial condition '" + name +
                      "' (known: shear, taylor-green, perturbed-shear, random-band)");
  }
  out.real_valued = true;
  return out;
}

Diagnostics diagnostics(const SpectralField& omega) {
  const Grid g = omega.grid;
  Diagnostics d;
  for (int si = 0; si < g.n; ++si) {
    const int kx = g.wavenumber(si);
    for (int sj = 0; sj < g.n; ++sj) {
      const int ky = g.wavenumber(sj);
      const double a2 = std::norm(omega.at_index(si, sj));
      d.enstrophy += 0.5 * a2;
      const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
      if (k2 > 0.0) d.energy += 0.5 * a2 / k2;
    }
  }
  // Quartic power needs 4B+1 points per dimension for an exact mean.
  const int band = omega.band.value_or(g.max_mode());
  const int m = std::max(4 * band + 2, 8);
  const RealField w = to_real(resample(omega, Grid::make(m)));
  double c3 = 0.0, c4 = 0.0;
  for (double v : w.values) {
    const double v2 = v * v;
    c3 += v2 * v;
    c4 += v2 * v2;
  }
  d.casimir3 = c3 / w.grid.size();
  d.casimir4 = c4 / w.grid.size();
  return d;
}

}  // namespace lax2d
