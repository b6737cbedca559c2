#include "lax2d/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "lax2d/lax_operators.hpp"
#include "lax2d/snapshot.hpp"

namespace lax2d {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json config_json(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [key, value] : cfg.to_map()) j[key] = value;
  return j;
}

json check_json(const ResidualReport& r) {
  json j = json::object();
  j["name"] = r.name;
  j["residual"] = r.residual_norm;
  j["scale"] = r.reference_scale;
  j["relative"] = r.relative;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["context"] = json::object();
  for (const auto& [key, value] : r.context) j["context"][key] = value;
  return j;
}

std::map<std::string, double> ic_params_for(const RunConfig& cfg) {
  if (cfg.ic == "perturbed-shear") return {{"eps", cfg.eps}};
  if (cfg.ic == "random-band") return {{"band", static_cast<double>(cfg.band)}};
  return {};
}

ZakharovParams zakharov_params_for(const RunConfig& cfg) {
  return ZakharovParams::make(cfg.alpha, cfg.beta, cfg.gamma, cfg.delta,
                              Complex(cfg.lambda_re, cfg.lambda_im),
                              cfg.resonance_policy == "error"
                                  ? ZakharovParams::ResonancePolicy::Error
                                  : ZakharovParams::ResonancePolicy::ZeroGauge);
}

int steps_for_run(const RunConfig& cfg) {
  const double raw = cfg.T / cfg.dt;
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 1e-9 * std::max(1.0, raw))
    throw ConfigError("T must be an integer multiple of dt");
  return static_cast<int>(rounded);
}

std::filesystem::path snapshot_path(const RunConfig& cfg, int step) {
  char name[32];
  std::snprintf(name, sizeof(name), "snap_%06d.laxf", step);
  return std::filesystem::path(cfg.out_dir) / name;
}

}  // namespace

std::string report_to_json(const std::string& name, const RunConfig& cfg,
                           const std::vector<ResidualReport>& checks) {
  json j = json::object();
  j["name"] = name;
  j["config"] = config_json(cfg);
  j["checks"] = json::array();
  for (const ResidualReport& r : checks) j["checks"].push_back(check_json(r));
  return j.dump(2) + "\n";
}

int cmd_simulate(const RunConfig& cfg) {
  cfg.validate();
  const Grid grid = Grid::make(cfg.n);
  const SpectralField ic = initial_condition(cfg.ic, ic_params_for(cfg), grid, cfg.seed);
  const TimeStepper stepper = TimeStepper::make(cfg.dt);
  const int total = steps_for_run(cfg);

  std::filesystem::create_directories(cfg.out_dir);
  std::ostringstream csv;
  csv << "time,energy,enstrophy,casimir3,casimir4\n";
  auto emit = [&](int stepno, const FlowState& state) {
    write_snapshot(snapshot_path(cfg, stepno), Snapshot(state.time, to_real(state.omega)));
    const Diagnostics d = diagnostics(state.omega);
    csv << fmt(state.time) << "," << fmt(d.energy) << "," << fmt(d.enstrophy) << ","
        << fmt(d.casimir3) << "," << fmt(d.casimir4) << "\n";
  };

  FlowState state(ic);
  emit(0, state);
  for (int s = 1; s <= total; ++s) {
    state = step(state, stepper);
    const bool at_interval = cfg.snapshot_interval > 0 && s % cfg.snapshot_interval == 0;
    if (at_interval || s == total) emit(s, state);
  }
  atomic_write_text(std::filesystem::path(cfg.out_dir) / "diagnostics.csv", csv.str());
  return 0;
}

std::vector<ResidualReport> run_verify_suite(const RunConfig& cfg) {
  cfg.validate();
  const Grid grid = Grid::make(cfg.n);
  std::vector<ResidualReport> checks;

  if (cfg.suite == "bracket") {
    checks = bracket_identity_suite(grid, cfg.band, cfg.seed, cfg.trials);
    const double tol = cfg.tolerance_or("tol_bracket", 0.0);
    if (tol > 0.0)
      for (ResidualReport& r : checks) {
        r.tolerance = tol;
        r.passed = r.relative <= tol;
      }
  } else if (cfg.suite == "compatibility") {
    const double tol = cfg.tolerance_or("tol_compatibility", 1e-11);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const SpectralField omega = random_real_field(grid, cfg.band, derive_seed(cfg.seed, trial, 10));
      const SpectralField phi = random_complex_field(grid, cfg.band, derive_seed(cfg.seed, trial, 11));
      ResidualReport r = compatibility_residual(omega, phi, nullptr, tol);
      r.name = "compatibility[" + std::to_string(trial) + "]";
      r.context["trial"] = std::to_string(trial);
      checks.push_back(std::move(r));
    }
    // Sensitivity control on the first trial's fields.
    const SpectralField omega = random_real_field(grid, cfg.band, derive_seed(cfg.seed, 0, 10));
    const SpectralField phi = random_complex_field(grid, cfg.band, derive_seed(cfg.seed, 0, 11));
    checks.push_back(compatibility_delta_control(omega, phi, 1e-3));
  } else if (cfg.suite == "zakharov") {
    const double tol = cfg.tolerance_or("tol_zakharov", 1e-11);
    const ZakharovParams params = zakharov_params_for(cfg);
    if (cfg.ic == "random-band") {
      for (int trial = 0; trial < cfg.trials; ++trial) {
        const SpectralField omega = random_real_field(grid, cfg.band, derive_seed(cfg.seed, trial, 20));
        const SpectralField phi = random_complex_field(grid, cfg.band, derive_seed(cfg.seed, trial, 21));
        ResidualReport r = zakharov_residual(omega, phi, params, tol);
        r.name = "zakharov[" + std::to_string(trial) + "]";
        r.context["trial"] = std::to_string(trial);
        checks.push_back(std::move(r));
      }
    } else {
      const SpectralField omega = initial_condition(cfg.ic, ic_params_for(cfg), grid, cfg.seed);
      const SpectralField phi = random_complex_field(grid, cfg.band, derive_seed(cfg.seed, 0, 21));
      checks.push_back(zakharov_residual(omega, phi, params, tol));
    }
  } else if (cfg.suite == "conservation") {
    ConservationOptions opts;
    opts.ic = cfg.ic;
    opts.ic_params = ic_params_for(cfg);
    opts.seed = cfg.seed;
    opts.dt = cfg.dt;
    opts.T = cfg.T;
    opts.samples = cfg.samples;
    opts.order_study = cfg.order_study;
    opts.tolerance = cfg.tolerance_or("tol_conservation", 1e-6);
    opts.tolerance_casimir = cfg.tolerance_or("tol_conservation", 1e-6);
    checks = conservation_suite(grid, opts);
  } else {
    throw ConfigError("unknown suite '" + cfg.suite +
                      "' (known: bracket, compatibility, zakharov, conservation)");
  }
  return checks;
}

int cmd_verify(const RunConfig& cfg) {
  const std::vector<ResidualReport> checks = run_verify_suite(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  atomic_write_text(std::filesystem::path(cfg.out_dir) / ("report_" + cfg.suite + ".json"),
                    report_to_json(cfg.suite, cfg, checks));
  bool all = true;
  for (const ResidualReport& r : checks) {
    std::printf("[%s] %s relative=%.3e tolerance=%.3e\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.relative, r.tolerance);
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

int cmd_spectrum(const RunConfig& cfg) {
  cfg.validate();
  const Grid grid = Grid::make(cfg.n);
  const SpectralField ic = initial_condition(cfg.ic, ic_params_for(cfg), grid, cfg.seed);
  const TimeStepper stepper = TimeStepper::make(cfg.dt);
  const SpectrumReport report = spectrum_along_flow(ic, stepper, cfg.K, cfg.sample_times);

  json j = json::object();
  j["name"] = "spectrum";
  j["config"] = config_json(cfg);
  j["K"] = report.K;
  j["matrix_norm"] = report.matrix_norm;
  j["times"] = report.times;
  j["drifts"] = report.drifts;
  j["spectra"] = json::array();
  for (const auto& spectrum : report.spectra) {
    json row = json::array();
    for (const Complex& v : spectrum) row.push_back({{"re", v.real()}, {"im", v.imag()}});
    j["spectra"].push_back(std::move(row));
  }
  std::filesystem::create_directories(cfg.out_dir);
  atomic_write_text(std::filesystem::path(cfg.out_dir) / "spectrum.json", j.dump(2) + "\n");
  for (size_t i = 0; i < report.drifts.size(); ++i)
    std::printf("drift t=%g -> t=%g: %.6e (||M||=%.6e)\n", report.times[i], report.times[i + 1],
                report.drifts[i], report.matrix_norm);
  return 0;
}

int cmd_transport(const RunConfig& cfg) {
  cfg.validate();
  const Grid grid = Grid::make(cfg.n);
  const SpectralField ic = initial_condition(cfg.ic, ic_params_for(cfg), grid, cfg.seed);
  const TimeStepper stepper = TimeStepper::make(cfg.dt);
  const TransportCheck check = eigenfunction_transport_check(ic, cfg.K, cfg.mode_index, stepper, cfg.T);

  const double tol = cfg.tolerance_or("tol_transport", 1e-6);
  std::map<std::string, std::string> ctx{
      {"lambda", fmt(check.lambda.real()) + "+" + fmt(check.lambda.imag()) + "i"},
      {"stream_ratio", fmt(check.stream_ratio)},
      {"mode_index", std::to_string(check.mode_index)},
      {"K", std::to_string(check.K)},
      {"T", fmt(check.T)},
  };
  std::vector<ResidualReport> checks;
  checks.push_back(ResidualReport::make("transport-error", check.transport_error, 1.0, tol, ctx));
  checks.push_back(ResidualReport::make("norm-preservation", std::abs(check.norm_ratio - 1.0), 1.0,
                                        1e-8, ctx));
  checks.push_back(ResidualReport::make("eigen-residual", check.eigen_residual, 1.0, tol, ctx));

  std::filesystem::create_directories(cfg.out_dir);
  atomic_write_text(std::filesystem::path(cfg.out_dir) / "report_transport.json",
                    report_to_json("transport", cfg, checks));
  bool all = true;
  for (const ResidualReport& r : checks) {
    std::printf("[%s] %s value=%.3e tolerance=%.3e\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.relative, r.tolerance);
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

}  // namespace lax2d
