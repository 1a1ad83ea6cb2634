#ifndef FAULTSCALE_CLI_HPP
#define FAULTSCALE_CLI_HPP

namespace faultscale {

/// Full command-line front end. Returns the process exit code.
/// Subcommands: run, trace gen|import|apply-fault, catalog list|validate,
/// report merge.
int run_cli(int argc, const char* const* argv);

}  // namespace faultscale

#endif
