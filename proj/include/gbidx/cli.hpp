#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace gbidx {

struct ConfigError : std::runtime_error {
  std::string path;
  ConfigError(std::string p, const std::string& msg) : std::runtime_error(p + ": " + msg), path(std::move(p)) {}
};

enum ExitCode { exit_ok = 0, exit_config = 2, exit_computation = 3, exit_invariant = 4 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gbidx
