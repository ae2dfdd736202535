#include "rhc/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace rhc {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_number(std::int64_t v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void CsvWriter::header(std::initializer_list<std::string_view> names) {
  bool first = true;
  for (auto n : names) {
    if (!first) out_ << ',';
    out_ << n;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<Cell> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out_ << ',';
    std::visit(
        [this](const auto& v) {
          if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::string>) {
            out_ << v;
          } else {
            out_ << format_number(v);
          }
        },
        c);
    first = false;
  }
  out_ << '\n';
}

}  // namespace rhc
