// Command-line driver: routes a problem to a decision procedure or search
// and reports the verdict.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hotab/syntax.hpp"

namespace hotab {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInput = 2,
  kExitSat = 10,
  kExitUnsat = 20,
  kExitUnknown = 30,
};

struct RunOptions {
  /// stt, efo or auto; unset defers to the problem's (mode ...) or auto.
  std::optional<std::string> mode;
  bool fragment_check = false;
  std::optional<std::size_t> max_nodes = 100000;
  std::optional<double> timeout_seconds = 10.0;
  std::vector<std::size_t> fuel_schedule{1, 2, 3};
  bool eager_close = false;
  std::optional<std::string> proof_out;
  std::optional<std::string> model_out;
  std::uint64_t max_domain = Frame::kDefaultCeiling;
};

/// Prints the verdict (first line `sat`, `unsat` or `unknown`) and returns
/// the exit code.
int run(const Problem& p, const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Parses `text` first; input errors give kExitInput.
int run_text(std::string_view text, const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Re-verifies a proof file.  With `problem`, its branch must match the
/// proof's root.  kExitUnsat when the proof checks, kExitInternal when it
/// does not, kExitInput on syntax errors.
int check_proof_file(std::string_view proof_text, const std::optional<Problem>& problem, std::ostream& out,
                     std::ostream& err);

/// One line per fragment flag, with the witness position of a failure.
std::string render_fragment_report(const FragmentReport& r, const Branch& a);

}  // namespace hotab
