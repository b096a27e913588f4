#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wearprompt::detail {

using CsvRow = std::vector<std::string>;

// RFC 4180 subset: comma separated, double-quoted fields with "" escapes,
// LF or CRLF line ends. Blank lines are skipped.
std::vector<CsvRow> parse_csv(std::string_view text);

std::string csv_field(std::string_view value);
std::string csv_line(const CsvRow& row);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace wearprompt::detail
