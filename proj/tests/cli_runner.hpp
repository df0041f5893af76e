#pragma once

// Runs the lipfree executable from the repository root and replays the golden
// matrix in tests/golden/matrix.tsv.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipfree::testing {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

inline CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = "cd '" LIPFREE_SOURCE_DIR "' && " + env + " '" LIPFREE_CLI_PATH "' " +
                          args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  CliResult r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct GoldenCase {
  std::string name;
  int exit_code;
  std::string args;
};

inline std::string golden_dir() { return LIPFREE_SOURCE_DIR "/tests/golden/"; }

inline std::vector<GoldenCase> golden_matrix() {
  std::ifstream in(golden_dir() + "matrix.tsv");
  if (!in) throw std::runtime_error("cannot read the golden matrix");
  std::vector<GoldenCase> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    GoldenCase c;
    std::string code;
    std::getline(fields, c.name, '\t');
    std::getline(fields, code, '\t');
    std::getline(fields, c.args);
    c.exit_code = std::stoi(code);
    cases.push_back(std::move(c));
  }
  return cases;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace lipfree::testing
