#pragma once

#include <filesystem>
#include <string>

namespace cca {

// Shortest representation that round-trips a double (17 significant digits).
std::string format_double(double value);

// Write via a temporary file in the same directory, then rename into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace cca
