#ifndef CAUSEWAY_CLI_HPP
#define CAUSEWAY_CLI_HPP

namespace causeway {

// Runs one command-line invocation. Exit codes: 0 when the command succeeds
// (and any checked property holds), 1 when a checked property fails with a
// counterexample or diagnostics, 2 on usage, parse or input errors.
int run_cli(int argc, const char* const* argv);

}  // namespace causeway

#endif
