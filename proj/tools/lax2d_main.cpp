#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "lax2d/commands.hpp"

namespace {

// Every flag mirrors a config key; flags set on the command line override
// values loaded from --config.
struct FlagSet {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common_options(CLI::App* cmd, FlagSet& flags) {
  cmd->add_option("--config", flags.config_path, "flat key = value config file");
  static const char* keys[] = {
      "n", "dt", "T", "ic", "eps", "band", "seed", "K", "out", "snapshot_interval",
      "suite", "trials", "samples", "order_study", "sample_times", "mode_index",
      "alpha", "beta", "gamma", "delta", "lambda_re", "lambda_im", "resonance_policy",
      "tol_bracket", "tol_compatibility", "tol_zakharov", "tol_conservation", "tol_transport"};
  for (const char* key : keys) {
    cmd->add_option_function<std::string>(
        std::string("--") + key,
        [&flags, key](const std::string& value) { flags.overrides.emplace_back(key, value); },
        std::string("config key ") + key);
  }
}

lax2d::RunConfig resolve_config(const FlagSet& flags) {
  lax2d::RunConfig cfg;
  if (!flags.config_path.empty()) cfg = lax2d::RunConfig::from_file(flags.config_path);
  for (const auto& [key, value] : flags.overrides) cfg.apply(key, value);
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral 2D Euler solver with Lax-pair verification suites"};
  app.require_subcommand(1);

  FlagSet flags;
  CLI::App* simulate = app.add_subcommand("simulate", "integrate the vorticity equation, write snapshots + diagnostics");
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite (bracket|compatibility|zakharov|conservation)");
  CLI::App* spectrum = app.add_subcommand("spectrum", "track the truncated operator spectrum along the flow");
  CLI::App* transport = app.add_subcommand("transport", "eigenfunction transport check on a stationary state");
  for (CLI::App* cmd : {simulate, verify, spectrum, transport}) add_common_options(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const lax2d::RunConfig cfg = resolve_config(flags);
    if (simulate->parsed()) return lax2d::cmd_simulate(cfg);
    if (verify->parsed()) {
      if (cfg.suite.empty())
        throw lax2d::ConfigError("verify requires --suite (bracket|compatibility|zakharov|conservation)");
      return lax2d::cmd_verify(cfg);
    }
    if (spectrum->parsed()) return lax2d::cmd_spectrum(cfg);
    if (transport->parsed()) return lax2d::cmd_transport(cfg);
    return 2;
  } catch (const lax2d::ConfigError& e) {
    std::fprintf(stderr, "lax2d: config error: %s\n", e.what());
    return 2;
  } catch (const lax2d::Error& e) {
    std::fprintf(stderr, "lax2d: error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "lax2d: error: %s\n", e.what());
    return 1;
  }
}
