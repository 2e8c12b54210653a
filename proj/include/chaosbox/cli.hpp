#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace chaosbox {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitNotBijective = 2,
  kExitGenerationStall = 3,
};

// Directory holding manifest.json and the shipped S-box grids.
std::filesystem::path default_corpus_dir();

// Runs one command line (args excludes the program name) and returns the
// exit code. All output goes to out/err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chaosbox
