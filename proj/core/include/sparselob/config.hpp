#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sparselob/engine.hpp"

namespace sparselob {

/// Loads a line-oriented [section] key = value config file into a fully
/// validated SimConfig. Omitted keys keep the built-in defaults; unknown or
/// duplicate keys raise ParseError with the offending line, value problems
/// raise ValidationError naming the key. See configs/paper-18H.cfg for the
/// complete schema with units.
SimConfig load_config(const std::filesystem::path& path);

SimConfig parse_config(std::istream& in, const std::string& origin = "<stream>");

/// Canonical form: every key written explicitly, doubles at full precision.
/// load_config(save_config(c)) reproduces c exactly.
void save_config(const SimConfig& config, const std::filesystem::path& path);

std::string config_to_string(const SimConfig& config);

} // namespace sparselob
