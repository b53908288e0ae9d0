#ifndef ARTIFACT_CLI_HPP
#define ARTIFACT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace artifact {

// Exit codes of run_command.
constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;       // a check failed or a computation raised
constexpr int kExitUnsupported = 2;  // outside the supported fragment
constexpr int kExitUsage = 3;        // parse or usage error

// Runs one command line (without the program name). Reports go to out,
// diagnostics in text mode go to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Splits a scenario line into words; double quotes group, '#' starts a
// comment outside quotes.
std::vector<std::string> split_command_line(const std::string& line);

}  // namespace artifact

#endif
