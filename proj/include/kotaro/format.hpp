#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kotaro {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

/// Parses the whole of `text` (surrounding blanks allowed) as a double.
std::optional<double> parse_double(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);

}  // namespace kotaro
