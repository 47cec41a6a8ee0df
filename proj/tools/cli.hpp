#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fkz {

/// Entry point of the fkz tool. Subcommands: gen, solve, bound, version.
/// Returns 0 on success; on error writes a message and usage text to err
/// and returns nonzero.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace fkz
