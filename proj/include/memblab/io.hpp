// io.hpp
// Deterministic text emission: RFC-4180 CSV quoting, shortest-round-trip
// float formatting, and file helpers.
#pragma once

#include <string>
#include <vector>

namespace memblab {

// %.17g rendering; round-trips exactly and is byte-stable across runs.
std::string fmt_double(double v);

std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace memblab
