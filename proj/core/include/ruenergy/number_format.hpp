#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ruenergy {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_number(double value);

/// Strict parse of a whole string as a double; std::nullopt on any trailing garbage.
std::optional<double> parse_number(std::string_view text);

/// Strict parse of a whole string as a base-10 integer.
std::optional<long long> parse_integer(std::string_view text);

}  // namespace ruenergy
