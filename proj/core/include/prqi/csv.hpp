#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace prqi {

/// Decimal form with 17 significant digits ("%.17g"), enough to round-trip any double.
std::string format_double(double v);

/// RFC 4180 writer: CRLF line endings, fields quoted only when they contain a comma, quote or
/// line break.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);
  void row(std::initializer_list<std::string_view> fields);

  static std::string escape(std::string_view field);

 private:
  std::ostream& out_;
};

}  // namespace prqi
