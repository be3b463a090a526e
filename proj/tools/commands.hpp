#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace disclinate::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitInvalidConfig = 2,
    kExitIoError = 3,
    kExitContourOnCore = 4,
    kExitNonConvergence = 5,
};

struct CommandOptions {
    std::string out_path;  ///< empty: standard output
    std::string kind = "connection";
    int refine = 0;
    bool json = false;
};

int cmd_field(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_frank(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& config, const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Full command line (without argv[0]); reads the config from `in` when --config is absent.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace disclinate::cli
