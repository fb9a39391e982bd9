#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pblock::csv {

using Row = std::vector<std::string>;

/// RFC 4180 reader: comma separated, double-quote escaping, quoted fields may
/// contain commas and newlines. A UTF-8 byte order mark on the first line is
/// skipped. Blank lines are ignored.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  /// Reads the next row; returns false at end of input.
  bool next(Row& row);
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  bool first_ = true;
};

std::vector<Row> read_all(std::istream& in);

/// Quotes a field only when it needs quoting.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const Row& row);

}  // namespace pblock::csv
