#pragma once

#include <stdexcept>
#include <string>

namespace macroflow {

/// Invalid user-supplied configuration. `key()` is the dotted config path
/// (e.g. "allocation.grid_step") when the error concerns a single key.
class ConfigError : public std::invalid_argument {
public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

}  // namespace macroflow
