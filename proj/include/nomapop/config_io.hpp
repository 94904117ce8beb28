#pragma once

// Plain-text configuration files: one `key = value` per line, `#` starts a
// comment. Keys are the SystemConfig field names; keys not present keep the
// reference defaults, optional fields stay unset.

#include "nomapop/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nomapop {

SystemConfig parse_config(std::istream& in);
SystemConfig load_config(const std::filesystem::path& path);

/// Sets one field by name. Unknown keys and unparsable values throw
/// Error(InvalidInput).
void set_field(SystemConfig& config, std::string_view key, std::string_view value);

/// "key=value" pairs of every set field, space separated, in declaration order.
std::string describe(const SystemConfig& config);

/// Round-trip shortest representation of a double.
std::string format_number(double x);

}  // namespace nomapop
