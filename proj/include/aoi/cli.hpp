#pragma once

#include <iosfwd>
#include <vector>

#include "aoi/config.hpp"
#include "aoi/sim_checks.hpp"

namespace aoi {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;   ///< a validation check failed
inline constexpr int kExitInvalid = 2;  ///< invalid or unstable input

int cmd_analyze(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_validate(const RunConfig& config, std::ostream& out);

/// The oracle and property suite behind `validate`, at 10^4 packets.
std::vector<PropertyResult> validation_suite(const RunConfig& config);

/// Dispatch on config.command and map exceptions to exit codes.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace aoi
