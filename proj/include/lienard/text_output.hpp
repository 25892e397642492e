#pragma once

// Locale-independent numeric text for CSV and JSON outputs.

#include <initializer_list>
#include <ostream>
#include <string>

namespace lienard {

/// Shortest representation that round-trips to the same double.
std::string format_double(double v);

/// One CSV row, comma-separated, terminated by '\n'.
void write_csv_row(std::ostream& os, std::initializer_list<double> values);

} // namespace lienard
