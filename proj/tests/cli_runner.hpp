#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace atc::test {

struct CliRun {
  int exit_code = -1;
  std::string out;
};

/// Runs the CLI with `args` through the shell; stderr is discarded.
/// `env` is prepended verbatim, e.g. "NAME=value".
inline CliRun run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" + ATC_CLI_PATH + "' " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace atc::test
