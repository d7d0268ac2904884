#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace chordlm::text {

std::vector<std::string> split(std::string_view line, char sep);

// Splits on runs of spaces and tabs; empty fields are dropped.
std::vector<std::string> split_ws(std::string_view line);

std::string_view trim(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);

// Strict integer / floating parse of the whole field; throws InputError.
long long parse_int(std::string_view field, std::string_view what);
double parse_double(std::string_view field, std::string_view what);

// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

// Fixed-point with `digits` decimals.
std::string format_fixed(double value, int digits);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace chordlm::text
