#pragma once

// Minimal CSV/number formatting. Numbers go through std::to_chars, which is
// locale-independent and round-trips doubles exactly.

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

namespace rhc {

std::string format_number(double v);
std::string format_number(std::int64_t v);

class CsvWriter {
 public:
  using Cell = std::variant<double, std::int64_t, std::string>;

  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(std::initializer_list<std::string_view> names);
  void row(std::initializer_list<Cell> cells);

 private:
  std::ostream& out_;
};

}  // namespace rhc
