#pragma once

#include <string>
#include <vector>

namespace swe1d {

// Shortest round-trip decimal rendering of a double (printf %.17g, '.').
std::string format_g17(double v);

// Writes text verbatim (binary stream, '\n' endings). Creates parent
// directories. Throws config_error on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

// Reads a whole text file; throws config_error if unreadable.
std::string read_text_file(const std::string& path);

// Splits one CSV line on commas (no quoting; the formats here never quote).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace swe1d
