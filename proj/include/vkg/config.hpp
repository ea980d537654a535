#ifndef VKG_CONFIG_HPP
#define VKG_CONFIG_HPP

#include <string>

#include "vkg/simulator.hpp"

namespace vkg {

// Parses a flat key=value config file into a validated RunConfig.
// Throws ParseError (syntax, duplicate key) or ValidationError (unknown key,
// bad value, violated invariant).
RunConfig parse_config(const std::string& path);

RunConfig parse_config_text(const std::string& text);

// Serialization of the effective config; parse_config_text of this string
// reproduces the RunConfig exactly.
std::string format_config(const RunConfig& config);

} // namespace vkg

#endif
