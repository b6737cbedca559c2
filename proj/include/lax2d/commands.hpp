#pragma once

#include "lax2d/run_config.hpp"
#include "lax2d/verification.hpp"

namespace lax2d {

/// Subcommand implementations. Each writes its artifacts under cfg.out_dir
/// and returns the process exit code: 0 on success / all checks passed,
/// 1 when a check failed. Usage problems throw ConfigError (exit 2) and
/// numerical failures throw NumericError (exit 1); main() does the mapping.
int cmd_simulate(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_spectrum(const RunConfig& cfg);
int cmd_transport(const RunConfig& cfg);

/// The verify suites behind cmd_verify, reusable by tests and replay:
/// suite is one of bracket | compatibility | zakharov | conservation.
std::vector<ResidualReport> run_verify_suite(const RunConfig& cfg);

/// Serialized report: {name, config, checks:[{name, residual, scale,
/// relative, tolerance, passed, context}]}.
std::string report_to_json(const std::string& name, const RunConfig& cfg,
                           const std::vector<ResidualReport>& checks);

}  // namespace lax2d
