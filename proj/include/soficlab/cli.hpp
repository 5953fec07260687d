#pragma once
// Command-line front end. Subcommands:
//   sofic-check  defect statistics of the configured levels
//   epsdim       regular-module dimension bracket (action regular-lp)
//   betti        first-cohomology bracket (action betti)
//   schatten     Schatten-model bracket (action schatten-regular)
//   dimexp       runs whatever action the config declares
// Shared flags: --config PATH (required), --out PATH, --seed N,
// --levels "d1,d2,...", --quiet.
//
// Exit codes: 0 success; 1 runtime failure (capacity, convergence); 2 usage
// or configuration error. On failure no partial report files are left
// behind (writes are temp-file + rename).

#include <string>
#include <vector>

namespace soficlab {

// `args` is the command line without the program name.
int cli_main(const std::vector<std::string>& args);

}  // namespace soficlab
