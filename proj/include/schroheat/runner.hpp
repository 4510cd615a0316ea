#pragma once

// Experiment runner behind the CLI: solve / verify-circuits / gate-count /
// sweep. Each command returns a RunReport; files (JSON report, CSV tables,
// exemplar circuit dumps) land in out_dir when it is non-empty.

#include "schroheat/report.hpp"

namespace schroheat {

RunReport cmd_solve(const RunConfig& cfg, const std::string& out_dir);
RunReport cmd_verify_circuits(const RunConfig& cfg, const std::string& out_dir);
RunReport cmd_gate_count(const RunConfig& cfg, const std::string& out_dir);
RunReport cmd_sweep(const RunConfig& cfg, const std::string& out_dir);

RunReport run_command(const RunConfig& cfg, const std::string& command,
                      const std::string& out_dir);

}  // namespace schroheat
