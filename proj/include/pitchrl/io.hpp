#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pitchrl {

/// Shortest decimal form of d that parses back to the same bits.
std::string fmt_double(double d);

std::string read_file(const std::string& path);

/// Write via temp file + rename so readers never observe partial output.
void write_file_atomic(const std::string& path, const std::string& content);

std::string base64_encode(const std::uint8_t* data, std::size_t len);
std::vector<std::uint8_t> base64_decode(const std::string& text);

/// Doubles as raw little-endian bytes in base64, for checkpoint payloads.
std::string doubles_to_base64(const std::vector<double>& values);
std::vector<double> base64_to_doubles(const std::string& text);

}  // namespace pitchrl
