#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "isspll/config.hpp"

namespace isspll {

/// Parse failure; what() carries "<name>:<line>: <reason>".
struct ConfigParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads an INI-style config: [loop]/[vco]/[fll]/[noise]/[run] sections, keys
/// named exactly like the SimConfig fields, SI units, scientific notation
/// accepted, '#' or ';' comments. Unset keys keep their defaults; i_chg
/// follows i_bias unless set explicitly. Does not validate (see validate()).
SimConfig parse_config(std::istream& in, const std::string& name);
SimConfig load_config(const std::filesystem::path& path);

/// Writes every key with its current value, grouped by section.
std::string format_config(const SimConfig& cfg);

}  // namespace isspll
