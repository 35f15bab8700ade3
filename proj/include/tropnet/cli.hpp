#ifndef TROPNET_CLI_HPP
#define TROPNET_CLI_HPP

namespace tropnet::cli {

// Entry point of the tropnet command-line tool. Returns the process exit code.
int run(int argc, char** argv);

}  // namespace tropnet::cli

#endif  // TROPNET_CLI_HPP
