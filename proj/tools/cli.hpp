#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zsl/graph.hpp"

namespace zsl::cli {

// Runs one subcommand; `args` excludes the program name. Returns 0 on
// success, 2 on invalid input and 3 when a computation fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "complete:5", "bipartite:3,4", "cycle:6", "path:2", "star:4".
// Throws UsageError.
WeightedGraph named_graph(const std::string& desc);

}  // namespace zsl::cli
