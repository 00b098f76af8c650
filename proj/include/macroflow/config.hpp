#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "macroflow/engine.hpp"

namespace macroflow {

// Config documents are plain text, one `key = value` per line. Keys are dotted
// paths such as `market.rf` or `choice.large.c_liq`; `#` starts a comment.

/// Sets one key from its textual value. Throws ConfigError for unknown keys
/// or unparsable values.
void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value);

/// Parses a `key=value` override as given to `--set`.
void apply_override(SimConfig& cfg, std::string_view assignment);

/// Applies every line of `text` on top of `cfg`. Errors are prefixed with
/// `<source>:<line>: `.
void apply_config_text(SimConfig& cfg, std::string_view text, std::string_view source);

/// Reads and applies a config file. Throws ConfigError if it cannot be read.
void apply_config_file(SimConfig& cfg, const std::filesystem::path& path);

/// Full config document. With `with_comments` every key carries a short
/// description, so the output doubles as the shipped default config.
std::string render_config(const SimConfig& cfg, bool with_comments);

/// All known keys in render order.
std::vector<std::string> config_keys();

}  // namespace macroflow
