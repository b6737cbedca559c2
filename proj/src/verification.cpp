#include "lax2d/verification.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace lax2d {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_int(long long v) { return std::to_string(v); }

SpectralField cos_x_probe(Grid g) {
  SpectralField f(g);
  f.at_mode(1, 0) = 0.5;
  f.at_mode(-1, 0) = 0.5;
  f.band = 1;
  f.real_valued = true;
  return f;
}

}  // namespace

ResidualReport ResidualReport::make(std::string name, double residual, double scale,
                                    double tolerance, std::map<std::string, std::string> context) {
  ResidualReport r;
  r.name = std::move(name);
  r.residual_norm = residual;
  r.reference_scale = scale;
  r.tolerance = tolerance;
  // The floor turns a vanishing scale into the absolute gate residual <= 1e-13.
  r.relative = residual / std::max(scale, 1e-13 / tolerance);
  r.passed = r.relative <= tolerance;
  r.context = std::move(context);
  return r;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (trial + 1) + 0xD1B54A32D192ED03ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SpectralField random_real_field(Grid grid, int band, std::uint64_t seed) {
  return initial_condition("random-band", {{"band", static_cast<double>(band)}}, grid, seed);
}

SpectralField random_complex_field(Grid grid, int band, std::uint64_t seed) {
  if (band < 0 || band > grid.max_mode())
    throw ConfigError("random field band must be in [0, n/2-1]");
  SpectralField out(grid);
  std::mt19937_64 rng(derive_seed(seed, 0, 0x706869));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int kx = -band; kx <= band; ++kx)
    for (int ky = -band; ky <= band; ++ky) {
      if (kx == 0 && ky == 0) continue;
      out.at_mode(kx, ky) = Complex(gauss(rng), gauss(rng));
    }
  const double norm = l2_norm(out);
  if (norm > 0.0)
    for (Complex& c : out.coeffs) c *= 1.0 / norm;
  out.band = band;
  out.real_valued = false;
  return out;
}

ResidualReport compatibility_residual(const SpectralField& omega, const SpectralField& phi,
                                      const SpectralField* euler_defect, double tolerance) {
  if (!omega.real_valued)
    throw ConfigError("compatibility_residual: omega must be a real-valued (conjugate-symmetric) field");
  if (!omega.band || !phi.band)
    throw ConfigError("compatibility_residual requires declared bands on omega and phi");
  const int need = 2 * *omega.band + *phi.band;
  if (need > omega.grid.max_mode())
    throw ConfigError("compatibility_residual: triple-product band " + std::to_string(need) +
                      " is not representable; need n >= " + std::to_string(2 * need + 2) +
                      " (have n=" + std::to_string(omega.grid.n) + ")");

  const SpectralField psi = poisson_solve(omega);
  SpectralField dt_omega = -1.0 * bracket_exact(psi, omega);
  if (euler_defect) dt_omega = dt_omega + *euler_defect;

  const SpectralField t1 = bracket_exact(dt_omega, phi);
  const SpectralField t2 = bracket_exact(omega, bracket_exact(psi, phi));
  const SpectralField t3 = bracket_exact(psi, bracket_exact(omega, phi));
  const SpectralField r = t1 - t2 + t3;

  const double scale = l2_norm(omega) * l2_norm(psi) * grad_norm(phi);
  std::map<std::string, std::string> ctx{
      {"n", fmt_int(omega.grid.n)},
      {"band_omega", fmt_int(*omega.band)},
      {"band_phi", fmt_int(*phi.band)},
      {"norm_omega", fmt(l2_norm(omega))},
      {"norm_psi", fmt(l2_norm(psi))},
      {"grad_norm_phi", fmt(grad_norm(phi))},
  };
  if (euler_defect) ctx["defect_norm"] = fmt(l2_norm(*euler_defect));
  return ResidualReport::make("compatibility", l2_norm(r), scale, tolerance, std::move(ctx));
}

ResidualReport zakharov_residual(const SpectralField& omega, const SpectralField& phi,
                                 const ZakharovParams& params, double tolerance) {
  if (!omega.band || !phi.band)
    throw ConfigError("zakharov_residual requires declared bands on omega and phi");
  const int need = 2 * *omega.band + *phi.band;
  if (need > omega.grid.max_mode())
    throw ConfigError("zakharov_residual: triple-product band " + std::to_string(need) +
                      " is not representable; need n >= " + std::to_string(2 * need + 2));

  const ZakharovSolution sol = zakharov_solve_S(omega, params);
  const SpectralField bso = bracket_exact(sol.S, omega);
  const SpectralField dt_omega = -1.0 * bso;

  const SpectralField d1s = directional_derivative(sol.S, params.alpha, params.beta);
  const SpectralField d2w = directional_derivative(omega, params.gamma, params.delta);
  const SpectralField constraint = d1s - d2w;

  const SpectralField t1 = bracket_exact(dt_omega, phi);
  const SpectralField t2 = params.lambda * bracket_exact(constraint, phi);
  const SpectralField t3 = bracket_exact(bso, phi);
  const SpectralField r = t1 - t2 + t3;

  const double scale =
      grad_norm(phi) * (l2_norm(sol.S) * l2_norm(omega) +
                        std::abs(params.lambda) * (l2_norm(d1s) + l2_norm(d2w)));
  std::map<std::string, std::string> ctx{
      {"n", fmt_int(omega.grid.n)},
      {"band_omega", fmt_int(*omega.band)},
      {"band_phi", fmt_int(*phi.band)},
      {"alpha", fmt(params.alpha)},
      {"beta", fmt(params.beta)},
      {"gamma", fmt(params.gamma)},
      {"delta", fmt(params.delta)},
      {"lambda", fmt(params.lambda.real()) + "+" + fmt(params.lambda.imag()) + "i"},
      {"constraint_norm", fmt(l2_norm(constraint))},
      {"zero_gauged_modes", fmt_int(static_cast<long long>(sol.unsolvable_modes.size()))},
  };
  return ResidualReport::make("zakharov", l2_norm(r), scale, tolerance, std::move(ctx));
}

ResidualReport compatibility_delta_control(const SpectralField& omega, const SpectralField& phi,
                                           double delta) {
  if (!(delta > 0.0)) throw ConfigError("delta control needs delta > 0");
  const SpectralField defect = delta * cos_x_probe(omega.grid);
  const ResidualReport perturbed = compatibility_residual(omega, phi, &defect);
  const double off = std::abs(std::log10(perturbed.relative / delta));
  std::map<std::string, std::string> ctx = perturbed.context;
  ctx["delta"] = fmt(delta);
  ctx["perturbed_relative"] = fmt(perturbed.relative);
  return ResidualReport::make("compatibility-delta-control", off, 1.0, 1.0, std::move(ctx));
}

std::vector<ResidualReport> bracket_identity_suite(Grid grid, int band, std::uint64_t seed,
                                                   int trials, bool aliased) {
  if (trials < 1) throw ConfigError("bracket suite needs at least one trial");
  if (band < 0 || band > grid.max_mode()) throw ConfigError("bracket suite band out of range");
  if (!aliased && 3 * band > grid.max_mode())
    throw ConfigError("bracket suite: triple brackets at band " + std::to_string(band) +
                      " need n >= " + std::to_string(6 * band + 2));

  auto brk = [&](const SpectralField& a, const SpectralField& b) {
    return aliased ? bracket_aliased(a, b) : bracket_exact(a, b);
  };
  auto mul = [&](const SpectralField& a, const SpectralField& b) {
    return aliased ? multiply_aliased(a, b) : multiply_exact(a, b);
  };

  std::vector<ResidualReport> reports;
  for (int trial = 0; trial < trials; ++trial) {
    SpectralField f = random_real_field(grid, band, derive_seed(seed, trial, 0));
    SpectralField g = random_real_field(grid, band, derive_seed(seed, trial, 1));
    SpectralField h = random_real_field(grid, band, derive_seed(seed, trial, 2));
    std::mt19937_64 rng(derive_seed(seed, trial, 3));
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const double a = coeff(rng);
    const double b = coeff(rng);

    std::map<std::string, std::string> ctx{{"n", fmt_int(grid.n)},
                                           {"band", fmt_int(band)},
                                           {"seed", fmt_int(static_cast<long long>(seed))},
                                           {"trial", fmt_int(trial)},
                                           {"aliased", aliased ? "true" : "false"}};

    {
      const SpectralField fg = brk(f, g);
      const SpectralField gf = brk(g, f);
      reports.push_back(ResidualReport::make("antisymmetry", l2_norm(fg + gf),
                                             l2_norm(fg) + l2_norm(gf), 1e-12, ctx));

      reports.push_back(ResidualReport::make("zero-mean", std::abs(fg.at_mode(0, 0)),
                                             l2_norm(fg), 1e-13, ctx));
    }
    {
      SpectralField lin = a * f + b * g;
      lin.band = band;  // sum of band-limited fields
      const SpectralField lhs = brk(lin, h);
      const SpectralField fh = brk(f, h);
      const SpectralField gh = brk(g, h);
      auto ctx2 = ctx;
      ctx2["a"] = fmt(a);
      ctx2["b"] = fmt(b);
      reports.push_back(ResidualReport::make(
          "bilinearity", l2_norm(lhs - (a * fh + b * gh)),
          std::abs(a) * l2_norm(fh) + std::abs(b) * l2_norm(gh), 1e-12, std::move(ctx2)));
    }
    {
      const SpectralField lhs = brk(mul(f, g), h);
      const SpectralField t1 = mul(f, brk(g, h));
      const SpectralField t2 = mul(g, brk(f, h));
      reports.push_back(ResidualReport::make("leibniz", l2_norm(lhs - t1 - t2),
                                             l2_norm(lhs) + l2_norm(t1) + l2_norm(t2), 1e-12, ctx));
    }
    {
      const SpectralField j1 = brk(f, brk(g, h));
      const SpectralField j2 = brk(g, brk(h, f));
      const SpectralField j3 = brk(h, brk(f, g));
      reports.push_back(ResidualReport::make("jacobi", l2_norm(j1 + j2 + j3),
                                             l2_norm(j1) + l2_norm(j2) + l2_norm(j3), 1e-11, ctx));
    }
  }
  return reports;
}

std::vector<ResidualReport> conservation_suite(Grid grid, const ConservationOptions& options) {
  const SpectralField ic = initial_condition(options.ic, options.ic_params, grid, options.seed);
  if (options.samples < 1) throw ConfigError("conservation suite needs samples >= 1");

  auto run = [&](double dt) {
    const TimeStepper stepper = TimeStepper::make(dt);
    const double raw = options.T / dt;
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > 1e-9 * std::max(1.0, raw))
      throw ConfigError("conservation suite: T must be an integer multiple of dt");
    const int total = static_cast<int>(rounded);

    struct Sampled {
      std::vector<Diagnostics> diags;
      SpectralField final_omega;
    };
    Sampled out{{}, ic};
    FlowState state(ic);
    out.diags.push_back(diagnostics(state.omega));
    int done = 0;
    for (int s = 1; s <= options.samples; ++s) {
      const int target = static_cast<int>(std::llround(static_cast<double>(total) * s / options.samples));
      state = advance(std::move(state), stepper, target - done);
      done = target;
      out.diags.push_back(diagnostics(state.omega));
    }
    out.final_omega = state.omega;
    return out;
  };

  const auto base = run(options.dt);
  const Diagnostics d0 = base.diags.front();
  const double rms2 = 2.0 * d0.enstrophy;  // mean of omega^2

  auto drift = [&](auto pick) {
    double worst = 0.0;
    for (const Diagnostics& d : base.diags) worst = std::max(worst, std::abs(pick(d) - pick(d0)));
    return worst;
  };

  std::map<std::string, std::string> ctx{{"n", fmt_int(grid.n)},
                                         {"ic", options.ic},
                                         {"seed", fmt_int(static_cast<long long>(options.seed))},
                                         {"dt", fmt(options.dt)},
                                         {"T", fmt(options.T)},
                                         {"samples", fmt_int(options.samples)}};

  std::vector<ResidualReport> reports;
  reports.push_back(ResidualReport::make("energy-drift", drift([](const Diagnostics& d) { return d.energy; }),
                                         std::abs(d0.energy), options.tolerance, ctx));
  reports.push_back(ResidualReport::make(
      "enstrophy-drift", drift([](const Diagnostics& d) { return d.enstrophy; }),
      std::abs(d0.enstrophy), options.tolerance, ctx));
  reports.push_back(ResidualReport::make(
      "casimir3-drift", drift([](const Diagnostics& d) { return d.casimir3; }),
      std::max(std::abs(d0.casimir3), std::pow(rms2, 1.5)), options.tolerance_casimir, ctx));
  reports.push_back(ResidualReport::make(
      "casimir4-drift", drift([](const Diagnostics& d) { return d.casimir4; }),
      std::max(std::abs(d0.casimir4), rms2 * rms2), options.tolerance_casimir, ctx));

  if (options.order_study) {
    const auto half = run(options.dt / 2.0);
    const auto quarter = run(options.dt / 4.0);
    const double e1 = l2_norm(base.final_omega - half.final_omega);
    const double e2 = l2_norm(half.final_omega - quarter.final_omega);
    if (e1 <= 0.0 || e2 <= 0.0)
      throw NumericError("order study degenerate: successive resolutions are bit-identical");
    const double order = std::log2(e1 / e2);
    auto ctx2 = ctx;
    ctx2["e_dt_vs_half"] = fmt(e1);
    ctx2["e_half_vs_quarter"] = fmt(e2);
    ctx2["order"] = fmt(order);
    reports.push_back(
        ResidualReport::make("rk4-self-convergence-order", std::abs(order - 4.0), 1.0, 0.5, std::move(ctx2)));
  }
  return reports;
}

}  // namespace lax2d
