#pragma once

#include <string>
#include <vector>

namespace steg {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC-4180-style: header row, comma separated, fields quoted only when they
// contain a comma, quote or newline. '\n' line ends. Deterministic byte
// output for identical tables.
std::string emit_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);

// '.' decimal point regardless of locale. csv_double round-trips exactly.
std::string csv_double(double v);
std::string csv_fixed(double v, int decimals);

}  // namespace steg
