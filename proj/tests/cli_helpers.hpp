// Helpers for driving the CLI binary from tests.
#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cli {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the CLI with the given argument string; HO_TOL is cleared unless
// env overrides are passed in front of the command.
inline RunResult run(const std::string& args, const std::string& env = "") {
  const auto dir = std::filesystem::temp_directory_path() / "ho_cli_test";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "stdout.txt").string();
  const std::string err = (dir / "stderr.txt").string();
  const std::string cmd = "env -u HO_TOL " + env + " " + HOEFFDING_CLI_PATH +
                          " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

inline std::string fixture(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

inline std::string golden(const std::string& name) {
  return slurp(std::string(GOLDEN_DIR) + "/" + name);
}

}  // namespace cli
