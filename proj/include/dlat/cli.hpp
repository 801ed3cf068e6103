#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlat/graph.hpp"
#include "dlat/io.hpp"

namespace dlat::cli {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2, kCapacity = 3 };

// Runs one subcommand; `args` excludes the program name. JSON (or DOT) goes to
// `out` unless --output is given, diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  std::size_t cap = 10'000;
  // Claimed supports [{"signs": [...], "flow": [...]}, ...] to check against
  // the computed ones.
  std::optional<io::json> claimed;
};

// Cross-checks of the enumeration, the balance criterion for bonds, the
// lattice operations and the breakeven test on one digraph. The report is
// {"checks": [{"name", "pass", "counterexample"}], "pass": bool, "seed": ...}.
io::json verify(const ArcParamDigraph& d, const VerifyOptions& options);

}  // namespace dlat::cli
