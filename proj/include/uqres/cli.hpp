#pragma once

// Batch front end behind the `uqres` executable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uqres {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string subcommand;
    std::string action;  // protocol, hamiltonian or algorithm name
    std::vector<std::string> measures;
    std::vector<std::string> inputs;
    std::string output;
    std::uint64_t seed = 0;
    std::optional<double> tolerance;
    std::size_t cap = 4096;
};

// Exit codes: 0 success, 2 parse error, 3 invariant or constraint violation,
// 4 dimension cap or resource shortfall.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Executes an already parsed configuration; throws the library error types.
// Returns the exit code for a completed run (3 on a failed verdict).
int execute(const RunConfig& cfg, std::ostream& out);

} // namespace uqres
