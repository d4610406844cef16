#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "cogmodal/checker.hpp"
#include "cogmodal/model.hpp"
#include "cogmodal/parser.hpp"

inline cogmodal::Model fixture(const std::string& name) {
  return cogmodal::load_model(std::string(COGMODAL_FIXTURES_DIR) + "/" + name);
}

inline cogmodal::Formula F(const std::string& s) { return cogmodal::parse_formula(s); }
inline cogmodal::Program P(const std::string& s) { return cogmodal::parse_program(s); }

inline std::vector<std::string> ids(const cogmodal::Model& m, const cogmodal::WorldSet& s) {
  return cogmodal::world_ids(m, s);
}

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with a shell-quoted argument string; stderr is discarded.
inline RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(COGMODAL_CLI) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}
