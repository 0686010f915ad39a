#ifndef DQ_TOOLS_CLI_HPP
#define DQ_TOOLS_CLI_HPP

#include <string>
#include <vector>

namespace dq::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_parse_error = 1,
  exit_domain_error = 2,
  exit_check_failed = 3,
};

/// One subcommand and the library operations it exposes.
struct Subcommand {
  std::string name;
  std::string help;
  std::vector<std::string> operations;
};

const std::vector<Subcommand>& dispatch_table();

struct Outcome {
  int exit_code = exit_ok;
  std::string out;
  std::string err;
};

/// Runs one command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`.
Outcome run(const std::vector<std::string>& args);

}  // namespace dq::cli

#endif  // DQ_TOOLS_CLI_HPP
