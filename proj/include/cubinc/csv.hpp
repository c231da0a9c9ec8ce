#ifndef CUBINC_CSV_HPP_
#define CUBINC_CSV_HPP_

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "cubinc/errors.hpp"

namespace cubinc::csv {

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::uint64_t parse_u64(std::string_view field) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
    throw InvalidInput("not a nonnegative integer: '" + std::string(field) + "'");
  return v;
}

// Reads the next line, stripping a trailing '\r'. Returns false at EOF.
inline bool next_line(std::istream& is, std::string& line) {
  if (!std::getline(is, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

inline void expect_header(std::istream& is, std::string_view header) {
  std::string line;
  if (!next_line(is, line) || line != header)
    throw InvalidInput("expected CSV header '" + std::string(header) + "'");
}

}  // namespace cubinc::csv

#endif  // CUBINC_CSV_HPP_
