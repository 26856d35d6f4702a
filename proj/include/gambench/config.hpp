#pragma once

#include <filesystem>
#include <stdexcept>

#include "gambench/runner.hpp"

namespace gambench {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses the declarative key-value run config. Unknown keys fail closed;
// unspecified fields keep the protocol defaults (50 iterations, 50 rounds,
// temperature 1.0, max_tokens 1000). See the README for the key list.
RunConfig parse_config(const std::filesystem::path& path);

}  // namespace gambench
