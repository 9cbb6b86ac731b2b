#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

// Minimal subprocess runner for driving the CLI binary from tests.

namespace testutil {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string shell_quote(const std::string& arg) {
  std::string quoted = "'";
  for (char c : arg) {
    if (c == '\'') {
      quoted += "'\\''";
    } else {
      quoted += c;
    }
  }
  quoted += "'";
  return quoted;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Runs `command args...` with stdout/stderr captured to temp files.
inline RunResult run_command(const std::string& binary,
                             const std::vector<std::string>& args,
                             const std::string& extra_env = "") {
  static int invocation = 0;
  const std::string tag = std::to_string(++invocation) + "_" +
                          std::to_string(static_cast<long>(getpid()));
  const std::string out_path = "/tmp/bellsim_test_out_" + tag;
  const std::string err_path = "/tmp/bellsim_test_err_" + tag;

  std::string cmd;
  if (!extra_env.empty()) cmd += extra_env + " ";
  cmd += shell_quote(binary);
  for (const std::string& a : args) cmd += " " + shell_quote(a);
  cmd += " > " + out_path + " 2> " + err_path;

  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = (status == -1) ? -1 : WEXITSTATUS(status);
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

// Extracts the first number following `prefix` in `text`; returns NaN when
// the prefix is absent.
inline double parse_value_after(const std::string& text,
                                const std::string& prefix) {
  const std::size_t pos = text.find(prefix);
  if (pos == std::string::npos) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::strtod(text.c_str() + pos + prefix.size(), nullptr);
}

}  // namespace testutil
