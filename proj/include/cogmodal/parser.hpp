#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cogmodal/syntax.hpp"

namespace cogmodal {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, const std::string& found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

struct ParseOptions {
  // Reject the derived program names ge/lt/gt/nge/sim.
  bool core_only = false;
};

Formula parse_formula(std::string_view text, const ParseOptions& opts = {});
Program parse_program(std::string_view text, const ParseOptions& opts = {});

std::string render(const Formula& f);
std::string render(const Program& p);

}  // namespace cogmodal
