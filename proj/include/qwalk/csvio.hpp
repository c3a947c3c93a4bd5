#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qwalk::csvio {

// Shortest decimal text that round-trips the double exactly.
std::string format_double(double value);

std::string join_row(const std::vector<std::string>& fields);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws when missing
};

// Minimal comma-separated parser (no quoting; matches what we emit).
Table read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace qwalk::csvio
