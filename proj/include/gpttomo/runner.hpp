#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "gpttomo/config.hpp"

namespace gpttomo {

/// Parsed command-line request; `run` dispatches it to the library.
struct Command {
  std::string verb;        // validate | decompose | classify | demo | report
  std::string theory;      // composite selector, e.g. "two-rebit"
  std::string state_name;  // named state, resolved against the theory
  std::string state_json;  // inline JSON array overriding state_name
  std::string demo_name;   // bell | steering | teleport | densecode | datahide
                           // | locc-decode | secret-share
  int bit = 0;
  int bit_x = 0, bit_y = 0;
  std::uint64_t seed = kDefaultSeed;
};

struct RunResult {
  int exit_code = 0;  // 0 pass, 1 usage/contract error, 2 verdict failure
  nlohmann::json output;
};

RunResult run(const Command& cmd);

}  // namespace gpttomo
