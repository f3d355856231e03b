#pragma once
// Argument handling for the `casimir` executable.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

namespace casimir::cli {

/// Command-line values that are layered over a configuration document.
struct Overrides {
  std::optional<std::string> geometry;
  std::map<std::string, double> dimensions;
  std::optional<double> eps1;
  std::optional<double> eps2;
  std::optional<double> n;
  std::optional<std::string> mode;
  std::optional<double> rel_tol;
  std::optional<std::size_t> max_evals;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method;
  std::optional<std::string> param;
  std::optional<double> start;
  std::optional<double> stop;
  std::optional<int> steps;
  std::optional<std::string> spacing;
};

/// Applies the flags on top of `doc`. A --geometry naming a different kind
/// than the document discards the document's dimensions.
nlohmann::json overlay(nlohmann::json doc, const Overrides& o);

/// Full command line, argv[0] included. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            bool out_is_terminal = false);

}  // namespace casimir::cli
