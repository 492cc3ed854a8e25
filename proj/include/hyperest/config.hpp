#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "hyperest/experiments.hpp"

namespace hyperest {

/// Scalar or array value of the supported TOML subset.
using ConfigValue = std::variant<bool, double, std::string, std::vector<double>>;

/// Flat TOML subset: `key = value` lines, `[table]` headers (keys become
/// "table.key"), `#` comments, numbers, booleans, basic strings and numeric arrays.
std::map<std::string, ConfigValue> parse_toml(const std::string& text);

/// Applies parsed keys on top of `base`; unknown keys raise ConfigError.
RunConfig config_from_toml(const std::string& text, RunConfig base);
RunConfig load_config(const std::string& path, RunConfig base);

/// Preset selected by the `problem` key (defaults to advection), then the file on top.
RunConfig load_config(const std::string& path);

}  // namespace hyperest
