#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace matchstudy::csv {

std::vector<std::string> split_line(const std::string& line, char delimiter = ',');

std::string trim(std::string value);

// Full round-trip formatting: re-parsing the text recovers the exact double.
std::string format_full(double value);

// Fixed-point with `decimals` digits; NaN renders as the empty string.
std::string format_fixed(double value, int decimals);

// Strict double parse of a whole field. Returns false on trailing junk/empty.
bool parse_double(const std::string& field, double& out);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit content digest, hex-encoded. Used for run metadata, not security.
std::string fnv1a_hex(const std::string& content);

}  // namespace matchstudy::csv
