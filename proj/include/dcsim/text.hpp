#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dcsim::text {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view line, char sep);

/// Parses the whole of `s` (after trimming) as a double; nullopt otherwise.
std::optional<double> parse_double(std::string_view s);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

}  // namespace dcsim::text
