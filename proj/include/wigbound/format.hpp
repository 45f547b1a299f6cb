#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wigbound {

/// Locale-independent decimal with 9 significant digits.
std::string fmt9(double value);

/// value rounded to 9 significant digits (what fmt9 would print).
double round9(double value);

/// Locale-independent strict parse; throws Error on junk.
double parse_double(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);

std::string trim(std::string_view text);

} // namespace wigbound
