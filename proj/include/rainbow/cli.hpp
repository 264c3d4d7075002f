#pragma once

#include "rainbow/tree.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rainbow {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitMismatch = 2,
    kExitInput = 3,
    kExitDegreeTooSmall = 4,
};

/// Runs the command line `args` (without the program name).
auto run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) -> int;

struct TreeReport {
    std::string text;  // key=value lines after a format=1 header
    bool identities_hold = true;
};

/// Halves, deficiency, spider shape, child classification, the reflection map
/// and the degree-sum identity of t.
auto check_tree_report(const RootedTree& t) -> TreeReport;

}  // namespace rainbow
